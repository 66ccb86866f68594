#include "jring/field.hpp"

namespace jring {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 31)) throw Error("modulus " + std::to_string(p) + " exceeds 2^31");
  FieldSpec f;
  f.p_ = static_cast<std::uint32_t>(p);
  return f;
}

std::string FieldSpec::name() const {
  return p_ == 0 ? std::string("Q") : "F" + std::to_string(p_);
}

namespace {

std::uint32_t reduce(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Scalar::Scalar(FieldSpec field, long value) : p_(field.modulus()) {
  if (p_) {
    long r = value % static_cast<long>(p_);
    if (r < 0) r += p_;
    residue_ = static_cast<std::uint32_t>(r);
  } else {
    q_ = value;
  }
}

Scalar::Scalar(FieldSpec field, const mpz_class& value) : p_(field.modulus()) {
  if (p_)
    residue_ = reduce(value, p_);
  else
    q_ = value;
}

Scalar::Scalar(FieldSpec field, const mpq_class& value) : p_(field.modulus()) {
  if (p_) {
    std::uint32_t den = reduce(value.get_den(), p_);
    if (den == 0) throw ArithmeticError("denominator " + value.get_den().get_str() + " vanishes in " + field.name());
    residue_ = static_cast<std::uint32_t>(std::uint64_t{reduce(value.get_num(), p_)} * pow_mod(den, p_ - 2, p_) % p_);
  } else {
    q_ = value;
    q_.canonicalize();
  }
}

FieldSpec Scalar::field() const { return FieldSpec::unchecked(p_); }

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_) throw ShapeError("scalar field mismatch");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  Scalar r(*this);
  if (p_)
    r.residue_ = pow_mod(residue_, p_ - 2, p_);
  else
    r.q_ = 1 / q_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_) {
    std::uint64_t s = std::uint64_t{residue_} + o.residue_;
    residue_ = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  } else {
    q_ += o.q_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (p_)
    residue_ = residue_ >= o.residue_ ? residue_ - o.residue_ : residue_ + (p_ - o.residue_);
  else
    q_ -= o.q_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_)
    residue_ = static_cast<std::uint32_t>(std::uint64_t{residue_} * o.residue_ % p_);
  else
    q_ *= o.q_;
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (p_)
    r.residue_ = residue_ ? p_ - residue_ : 0;
  else
    r.q_ = -q_;
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  return a.p_ ? a.residue_ == b.residue_ : a.q_ == b.q_;
}

std::string Scalar::to_string() const { return p_ ? std::to_string(residue_) : q_.get_str(); }

}  // namespace jring
