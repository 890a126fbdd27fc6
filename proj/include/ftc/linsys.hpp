#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Rational transfer-function algebra over dense real coefficient lists
// (descending powers of s). Everything here is immutable and pure.

namespace ftc {

using Complex = std::complex<double>;

struct LinsysError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleOnGrid : LinsysError {
    using LinsysError::LinsysError;
};
struct DegenerateDenominator : LinsysError {
    using LinsysError::LinsysError;
};
struct UnstableSystem : LinsysError {
    using LinsysError::LinsysError;
};
struct AlgebraicLoop : LinsysError {
    using LinsysError::LinsysError;
};

// Polynomial helpers, coefficients in descending powers of s.
namespace poly {

std::vector<double> trim(const std::vector<double>& c, double tol = 0.0);
std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> scale(const std::vector<double>& a, double k);
Complex eval(const std::vector<double>& c, Complex s);  // Horner
std::vector<Complex> roots(const std::vector<double>& c);
std::vector<double> from_roots(const std::vector<Complex>& r, double leading);

}  // namespace poly

class RationalTF {
public:
    RationalTF() : num_{0.0}, den_{1.0} {}
    RationalTF(std::vector<double> num, std::vector<double> den);

    static RationalTF constant(double k) { return RationalTF({k}, {1.0}); }

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }
    int num_degree() const { return static_cast<int>(num_.size()) - 1; }
    int den_degree() const { return static_cast<int>(den_.size()) - 1; }
    bool is_proper() const { return num_.size() <= den_.size(); }

    Complex eval(Complex s) const;
    Complex eval_jw(double omega) const { return eval(Complex(0.0, omega)); }

    // Cancels root pairs shared by num and den within `tol`.
    RationalTF reduced(double tol = 1e-8) const;

    RationalTF operator*(const RationalTF& rhs) const;
    RationalTF operator+(const RationalTF& rhs) const;
    RationalTF operator-(const RationalTF& rhs) const;
    RationalTF scaled(double k) const;

private:
    std::vector<double> num_;
    std::vector<double> den_;
};

struct FrequencyGrid {
    std::vector<double> omegas;

    // 400 log-spaced points over [1e-3, 1e3] rad/s.
    static FrequencyGrid log_default(std::size_t n = 400, double lo = 1e-3, double hi = 1e3);
};

struct FrequencyResponse {
    FrequencyGrid grid;
    std::vector<Complex> values;
};

FrequencyResponse freq_response(const RationalTF& tf, const FrequencyGrid& grid);

std::vector<Complex> poles(const RationalTF& tf);
std::vector<Complex> zeros(const RationalTF& tf);

// Strict test: every pole real part < -1e-9.
inline constexpr double kStabilityEps = 1e-9;
bool is_stable(const RationalTF& tf);

// Hamiltonian-eigenvalue bisection, relative tolerance 1e-4, seeded by a
// coarse 400-point grid bracket.
double hinf_norm(const RationalTF& tf);

RationalTF series(const RationalTF& a, const RationalTF& b);
RationalTF feedback_unity(const RationalTF& loop);

}  // namespace ftc
