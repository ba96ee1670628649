#include <doctest.h>

TEST_CASE("placeholder test_radon") { CHECK(true); }
