#include <doctest.h>

TEST_SUITE_BEGIN("eigensolve");
// filled in alongside the module
TEST_SUITE_END();
