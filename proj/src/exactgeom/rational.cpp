#include "polynorm/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "polynorm/errors.hpp"

namespace polynorm {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den =
        slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false))
        throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    const Integer p(n);
    const Integer q{std::string(den)};
    if (q == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
}

std::string to_string(const Rational& r) { return r.str(); }

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorKind::ShapeMismatch, "row length");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw Error(ErrorKind::ShapeMismatch, "column length");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vec Matrix::row(std::size_t r) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec Matrix::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "matrix product");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

Vec operator*(const Matrix& a, const Vec& x) {
    if (a.cols() != x.size()) throw Error(ErrorKind::ShapeMismatch, "matrix-vector product");
    Vec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0 && x[j] != 0) y[i] += a(i, j) * x[j];
    return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::ShapeMismatch, "matrix sum");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + Rational(-1) * b; }

Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "hconcat");
    Matrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "dot product");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector sum");
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector difference");
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

Vec operator-(const Vec& a) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return c;
}

Vec operator*(const Rational& s, const Vec& a) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

int lex_compare(const Vec& a, const Vec& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i]) return -1;
        if (b[i] < a[i]) return 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

bool lex_positive(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return x > 0;
    return false;
}

Vec primitive(const Vec& v) {
    Integer l = 1;
    for (const auto& x : v)
        if (x != 0) l = boost::multiprecision::lcm(l, Integer(denominator(x)));
    Integer g = 0;
    for (const auto& x : v)
        if (x != 0) g = boost::multiprecision::gcd(g, Integer(numerator(x) * (l / denominator(x))));
    if (g == 0) return v;
    Vec out(v.size());
    const Rational scale(l, g);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * scale;
    return out;
}

std::string to_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

}  // namespace polynorm
