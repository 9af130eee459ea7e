#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lattice {

// Expression templates off so that std::min and friends see plain values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

// Malformed or out-of-domain input. CLI exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation that could not be completed or certified. CLI exit code 1.
struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using IntVec = std::vector<int64_t>;
using RatVec = std::vector<Rational>;
using IntMat = std::vector<IntVec>;
using RatMat = std::vector<RatVec>;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor(const Rational& q);
BigInt ceil(const Rational& q);
// Representative of q mod 1 in [0,1).
Rational mod1(const Rational& q);
bool is_integer(const Rational& q);
int64_t to_int64(const BigInt& x);
int64_t to_int64(const Rational& q);
int64_t floor_int(const Rational& q);
int64_t ceil_int(const Rational& q);

}  // namespace lattice
