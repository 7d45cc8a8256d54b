#include <doctest.h>

TEST_SUITE_BEGIN("metann");
TEST_SUITE_END();
