#pragma once

// Exact arithmetic for homogeneous polynomials in two variables over Q:
// formal partials, squarefreeness through the gcd of dehomogenizations,
// the constructive certificate A*P + B*Q = x^m (A, B the partials), and
// the Milnor number as an exact codimension computed degree by degree.

#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace morbit {

using Rational = boost::multiprecision::cpp_rational;

class HomogeneousPoly {
 public:
  // Zero polynomial of degree 0.
  HomogeneousPoly();
  // coeffs[j] is the coefficient of x^(degree-j) * y^j; size degree+1.
  HomogeneousPoly(long long degree, std::vector<Rational> coeffs);

  static HomogeneousPoly zero(long long degree);
  static HomogeneousPoly monomial(long long xexp, long long yexp,
                                  Rational c = Rational(1));
  // Accepts forms like "x^3 - 3*x*y^2", "1/2*x^2 + y^2", "-xy" ('*' optional).
  // Throws std::invalid_argument on syntax errors or inhomogeneous input.
  static HomogeneousPoly parse(const std::string& text);

  long long degree() const { return degree_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(long long xexp, long long yexp) const;
  bool is_zero() const;

  HomogeneousPoly operator+(const HomogeneousPoly& o) const;
  HomogeneousPoly operator-(const HomogeneousPoly& o) const;
  HomogeneousPoly operator*(const HomogeneousPoly& o) const;
  HomogeneousPoly operator*(const Rational& s) const;
  HomogeneousPoly operator-() const;
  bool operator==(const HomogeneousPoly& o) const;

  HomogeneousPoly dx() const;  // formal partial in x
  HomogeneousPoly dy() const;
  HomogeneousPoly swap_xy() const;

  // Largest s with x^s dividing the polynomial (degree+1 for zero).
  long long x_multiplicity() const;
  HomogeneousPoly divide_x_power(long long s) const;  // exact division
  HomogeneousPoly times_x_power(long long s) const;

  std::string to_string() const;

 private:
  long long degree_ = 0;
  std::vector<Rational> c_;
};

// Formal partials (A, B) = (g'_x, g'_y); throws on degree 0.
std::pair<HomogeneousPoly, HomogeneousPoly> partials(const HomogeneousPoly& g);

// True iff g has no repeated factor, decided by the x-power bookkeeping
// plus the univariate gcd of the dehomogenizations A(1,t), B(1,t).
bool is_squarefree(const HomogeneousPoly& g);

struct JacobianCertificate {
  char variable = 'x';  // 'x' or 'y'
  long long m = 0;      // A*P + B*Q = variable^m
  HomogeneousPoly P, Q;
  // univariate ingredients of the construction (t-coefficient vectors,
  // index = exponent): alpha = A(1,t), beta = B(1,t), alpha*p + beta*q = 1
  std::vector<Rational> alpha, beta, p, q;

  // Re-expands A*P + B*Q - variable^m for the given g and returns whether
  // it is identically zero.
  bool verify(const HomogeneousPoly& g) const;
};

// Throws std::runtime_error when g is not squarefree (the Bezout step
// meets a nonconstant gcd), std::invalid_argument on bad inputs.
JacobianCertificate jacobian_certificate(const HomogeneousPoly& g,
                                         char variable);

struct MilnorResult {
  long long mu = 0;
  long long cutoff = 0;        // the degree bound p = 2*max(m_x, m_y)
  long long mu_at_recheck = 0; // recomputed at cutoff+2, must equal mu
  long long m_x = 0, m_y = 0;  // certificate exponents
};

// Exact dim_Q Q[x,y]/(g'_x, g'_y); throws std::runtime_error for
// non-squarefree g (the dimension is infinite).
MilnorResult milnor_number(const HomogeneousPoly& g, bool parallel = true);

// Random squarefree homogeneous polynomial with 2 <= degree <= max_degree
// and integer coefficients bounded by height.
HomogeneousPoly random_squarefree(std::mt19937_64& rng,
                                  long long max_degree = 8,
                                  long long height = 10);

}  // namespace morbit
