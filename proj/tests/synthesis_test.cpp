#include <doctest.h>

TEST_SUITE_BEGIN("synthesis");
TEST_SUITE_END();
