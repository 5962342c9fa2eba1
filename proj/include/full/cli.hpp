#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "full/engine.hpp"

namespace full {

struct CliConfig {
  std::string subcommand;  // check | universalize | eval | batch
  std::string kb_path;
  std::string maxim_name;
  DeonticOperator op = DeonticOperator::Perm;
  std::vector<DeonticOperator> batch_ops{DeonticOperator::Perm, DeonticOperator::Imp, DeonticOperator::Obl};
  ResourceLimits limits;
  std::string output_format = "human";  // human | json
  bool trace = false;
  bool color = false;
  unsigned jobs = 1;
};

/// Exit status: 0 answer true / success, 1 answer false, 2 diagnostic or refusal.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a CliConfig and runs it.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace full
