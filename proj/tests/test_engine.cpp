#include <doctest.h>
// suite pending
