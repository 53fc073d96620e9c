#pragma once

#include <iosfwd>
#include <string>

#include "orthodual/krawtchouk.hpp"

namespace orthodual {

// Text schema, one record per line, '#' starts a comment:
//
//   orthodual-kappa 1
//   n <n>
//   nu <value>
//   p <p_0> ... <p_n>
//   p_hat <p_hat_0> ... <p_hat_n>
//   U
//   <u_00> ... <u_0n>
//   ...
//   <u_n0> ... <u_nn>
//
// Values are rationals "a/b" for exact-backed tuples and doubles printed with
// 17 significant digits otherwise. A file whose values all parse as
// rationals is read back as an exact-backed tuple.

void write_kappa(std::ostream& out, const Kappa& kappa);
std::string format_kappa(const Kappa& kappa);
Kappa read_kappa(std::istream& in);
Kappa read_kappa_file(const std::string& path);

}  // namespace orthodual
