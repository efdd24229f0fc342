#pragma once
// Batch front end. Exit codes: 0 success, 1 usage error, 2 data or
// constraint error, 3 OWL inconsistency under --fail-on-inconsistency.

#include <iosfwd>
#include <string>
#include <vector>

namespace semnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInconsistent = 3;

// args excludes the program name.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace semnet::cli
