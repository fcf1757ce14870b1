// placeholder; the real subcommand dispatch lands with the cli module
#include <cstdio>

int main() {
  std::fprintf(stderr, "usage: fanomut <subcommand>\n");
  return 2;
}
