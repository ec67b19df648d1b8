#include <doctest.h>

TEST_SUITE_BEGIN("conforming");
// filled in alongside the module
TEST_SUITE_END();
