#include "orthodual/kappa_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include "orthodual/error.hpp"

namespace orthodual {
namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

std::vector<std::string> next_record(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (!tokens.empty()) return tokens;
  }
  return {};
}

std::vector<std::string> expect(std::istream& in, const std::string& key, std::size_t values) {
  auto rec = next_record(in);
  if (rec.empty() || rec.front() != key || rec.size() != values + 1) {
    throw Error(ErrorCode::ParseError, "expected '" + key + "' with " + std::to_string(values) + " value(s)");
  }
  rec.erase(rec.begin());
  return rec;
}

}  // namespace

void write_kappa(std::ostream& out, const Kappa& kappa) {
  const int n = kappa.n();
  out << "orthodual-kappa 1\n";
  out << "n " << n << '\n';
  if (const auto& e = kappa.exact()) {
    out << "nu " << to_string(e->nu) << '\n';
    out << "p";
    for (const auto& v : e->p) out << ' ' << to_string(v);
    out << "\np_hat";
    for (const auto& v : e->p_hat) out << ' ' << to_string(v);
    out << "\nU\n";
    for (int k = 0; k <= n; ++k) {
      for (int l = 0; l <= n; ++l) out << (l ? " " : "") << to_string(e->u(k, l));
      out << '\n';
    }
    return;
  }
  out << "nu " << format_double(kappa.nu()) << '\n';
  out << "p";
  for (double v : kappa.p()) out << ' ' << format_double(v);
  out << "\np_hat";
  for (double v : kappa.p_hat()) out << ' ' << format_double(v);
  out << "\nU\n";
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) out << (l ? " " : "") << format_double(kappa.U()(k, l));
    out << '\n';
  }
}

std::string format_kappa(const Kappa& kappa) {
  std::ostringstream os;
  write_kappa(os, kappa);
  return os.str();
}

Kappa read_kappa(std::istream& in) {
  const auto header = next_record(in);
  if (header.size() != 2 || header[0] != "orthodual-kappa" || header[1] != "1") {
    throw Error(ErrorCode::ParseError, "missing 'orthodual-kappa 1' header");
  }
  const auto n_tok = expect(in, "n", 1);
  const int n = std::stoi(n_tok[0]);
  if (n < 1) throw Error(ErrorCode::ParseError, "n must be >= 1");
  const auto m = static_cast<std::size_t>(n + 1);
  std::vector<ParsedScalar> values;
  auto take = [&](const std::vector<std::string>& toks) {
    for (const auto& t : toks) values.push_back(parse_scalar(t));
  };
  take(expect(in, "nu", 1));
  take(expect(in, "p", m));
  take(expect(in, "p_hat", m));
  expect(in, "U", 0);
  for (std::size_t k = 0; k < m; ++k) {
    const auto row = next_record(in);
    if (row.size() != m) throw Error(ErrorCode::ParseError, "U row " + std::to_string(k) + " has wrong length");
    take(row);
  }
  bool exact = true;
  for (const auto& v : values) exact = exact && v.exact.has_value();
  if (exact) {
    ExactKappa e;
    e.n = n;
    e.nu = *values[0].exact;
    for (std::size_t i = 0; i < m; ++i) e.p.push_back(*values[1 + i].exact);
    for (std::size_t i = 0; i < m; ++i) e.p_hat.push_back(*values[1 + m + i].exact);
    for (std::size_t i = 0; i < m * m; ++i) e.U.push_back(*values[1 + 2 * m + i].exact);
    return validate_kappa(e);
  }
  const auto mi = static_cast<Eigen::Index>(m);
  Eigen::VectorXd p(mi), p_hat(mi);
  Eigen::MatrixXd U(mi, mi);
  for (Eigen::Index i = 0; i < mi; ++i) {
    p(i) = values[1 + static_cast<std::size_t>(i)].value;
    p_hat(i) = values[1 + m + static_cast<std::size_t>(i)].value;
  }
  for (Eigen::Index k = 0; k < mi; ++k)
    for (Eigen::Index l = 0; l < mi; ++l) U(k, l) = values[1 + 2 * m + static_cast<std::size_t>(k * mi + l)].value;
  return validate_kappa(values[0].value, p, p_hat, U);
}

Kappa read_kappa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open kappa file '" + path + "'");
  return read_kappa(in);
}

}  // namespace orthodual
