#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  // A closed pipe surfaces as EPIPE from write(), which ends output cleanly.
  std::signal(SIGPIPE, SIG_IGN);
  std::vector<std::string> args(argv, argv + argc);
  rcf::cli::FdSink out(1);
  return rcf::cli::run(args, out, std::cerr);
}
