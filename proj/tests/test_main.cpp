#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"
#include "fabt/support/large_stack.hpp"

int main(int argc, char** argv) {
  return fabt::run_with_large_stack([&] {
    doctest::Context context(argc, argv);
    return context.run();
  });
}
