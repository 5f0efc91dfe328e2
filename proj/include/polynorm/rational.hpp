#ifndef POLYNORM_RATIONAL_HPP
#define POLYNORM_RATIONAL_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace polynorm {

// GMP rationals are always kept in lowest terms with a positive denominator.
// Expression templates are off so that `auto` never captures a lazy proxy.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using Vec = std::vector<Rational>;

/// Parses "p/q" or "p" (optional leading sign). Throws Error(ErrorKind::Parse).
Rational parse_rational(std::string_view text);

/// Lowest-terms rendering: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& r);

Rational abs(const Rational& r);

/// Dense row-major rational matrix.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::size_t cols, const std::vector<Vec>& rows);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Vec column(std::size_t c) const;

    Matrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, const Vec& x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);

/// [a | b] side by side; rows must agree.
Matrix hconcat(const Matrix& a, const Matrix& b);
/// Block diagonal diag(a, b).
Matrix block_diag(const Matrix& a, const Matrix& b);

Rational dot(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Rational& s, const Vec& a);
bool is_zero(const Vec& v);
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);

/// Lexicographic comparison on equal-length vectors.
int lex_compare(const Vec& a, const Vec& b);
/// First nonzero coordinate is positive.
bool lex_positive(const Vec& v);

/// Scales v to the primitive integer vector on the same ray (gcd 1). Zero stays zero.
Vec primitive(const Vec& v);

std::string to_string(const Vec& v);

}  // namespace polynorm

#endif
