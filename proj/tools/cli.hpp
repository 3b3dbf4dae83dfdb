#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sval::cli {

// Exit codes: 0 pass/true, 1 fail/false, 2 usage, parse or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sval::cli
