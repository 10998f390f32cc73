#include "nct/certified_real.hpp"

#include <cctype>

#include "nct/errors.hpp"

namespace nct {

double Enclosure::mid() const {
  mpq_class m = (lo + hi) / 2;
  return m.get_d();
}

double Enclosure::width() const {
  mpq_class w = hi - lo;
  return w.get_d();
}

CertifiedReal::CertifiedReal(mpq_class lo, mpq_class hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  lo_.canonicalize();
  hi_.canonicalize();
  if (!(lo_ < hi_)) {
    throw DomainError("certified real requires lo < hi");
  }
}

double CertifiedReal::midpoint() const {
  mpq_class m = (lo_ + hi_) / 2;
  return m.get_d();
}

long CertifiedReal::precision_bits() const {
  mpq_class w = width();
  // log2(w) = log2(num) - log2(den), within one bit.
  long num_bits = static_cast<long>(mpz_sizeinbase(w.get_num_mpz_t(), 2));
  long den_bits = static_cast<long>(mpz_sizeinbase(w.get_den_mpz_t(), 2));
  return den_bits - num_bits;
}

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational literal");
  try {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      mpq_class r(text, 10);
      if (r.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
      r.canonicalize();
      return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return mpq_class(mpz_class(text, 10));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") {
      throw DomainError("malformed decimal '" + text + "'");
    }
    for (std::size_t i = 0; i < digits.size(); ++i) {
      char c = digits[i];
      if (!(std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && (c == '-' || c == '+')))) {
        throw DomainError("malformed decimal '" + text + "'");
      }
    }
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    mpq_class r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational '" + text + "'");
  }
}

std::string to_string(const mpz_class& z) { return z.get_str(); }

}  // namespace nct
