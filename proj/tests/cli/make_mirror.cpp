// Writes a local Monk's mirror for the fetch tests: the regenerated test sets,
// copies of them under the training names, and optionally a tampered file.

#include <iostream>

#include "fixtures.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_mirror DIR [--tamper]\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  infodd::testing::write_monks_test_files(dir);
  for (int p = 1; p <= 3; ++p) {
    std::ofstream(dir / ("monks-" + std::to_string(p) + ".train")) << infodd::testing::monks_test_file(p);
  }
  if (argc > 2 && std::string(argv[2]) == "--tamper") {
    std::string text = infodd::testing::monks_test_file(2);
    text[1] = text[1] == '0' ? '1' : '0';
    std::ofstream(dir / "monks-2.test") << text;
  }
  return 0;
}
