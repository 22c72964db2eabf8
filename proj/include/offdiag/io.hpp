#ifndef OFFDIAG_IO_HPP
#define OFFDIAG_IO_HPP

#include <string>

#include "offdiag/operator.hpp"

namespace offdiag {

// Simple matrix exchange format. Header carries (n, d, radius); loading
// reconstructs a standard Z^d window, so a non-identity generator matrix is
// not round-tripped.
//
// CSV: first line "n,d,radius", then n*n lines "re,im" in row-major order.
// Binary: three little-endian int64 (n, d, radius), then n*n re/im doubles.
void save_matrix_csv(const OperatorMatrix& a, const std::string& path);
OperatorMatrix load_matrix_csv(const std::string& path);

void save_matrix_binary(const OperatorMatrix& a, const std::string& path);
OperatorMatrix load_matrix_binary(const std::string& path);

}  // namespace offdiag

#endif
