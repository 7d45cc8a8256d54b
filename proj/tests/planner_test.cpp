#include <doctest.h>

TEST_SUITE_BEGIN("planner");
TEST_SUITE_END();
