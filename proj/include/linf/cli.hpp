#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linf::cli {

// Runs one command line (without the program name). Exit codes: 0 success
// or valid, 1 property violated (including NotHomotopic and
// CertificateNotFound), 2 malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linf::cli
