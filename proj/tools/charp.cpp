#include <iostream>
#include <iterator>

#include "charp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = charp::run_cli(args, [] {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  });
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
