#include <cstdio>

int main() {
  std::puts("geomlab: command-line interface under construction");
  return 2;
}
