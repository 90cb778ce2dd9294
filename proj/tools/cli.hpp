#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace itlab::cli {

/// Exit codes: 0 success, 1 negative verdict, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace itlab::cli
