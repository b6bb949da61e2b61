#pragma once

#include <string>
#include <vector>

namespace dtbc::coeffs {

/// Convolution-kernel families of the boundary closures. The S families act
/// on x-normal sides, the T families are the same kernels with mu_x and mu_y
/// exchanged and act on y-normal sides.
enum class Family { S0, S1, S2, T0, T1, T2 };

/// Two independent generation routes, kept separate so they can cross-check
/// each other: ClosedForm evaluates the Legendre/Chebyshev expressions (via
/// their cheap consequence recurrences where available), Inductive solves the
/// quadratic/corrector relations term by term.
enum class Route { ClosedForm, Inductive };

struct CoefficientSequence {
    Family family;
    Route route;
    double mu_x = 0.0;
    double mu_y = 0.0;
    std::vector<double> values;

    double operator[](size_t n) const { return values[n]; }
    size_t size() const { return values.size(); }
};

/// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre(int n, double x);

/// Chebyshev polynomial of the second kind U_n(x).
double chebyshev_u(int n, double x);

CoefficientSequence gen_s0(double mu_x, int count, Route route = Route::ClosedForm);
CoefficientSequence gen_s1(double mu_x, double mu_y, int count, Route route = Route::ClosedForm);
CoefficientSequence gen_s2(double mu_x, double mu_y, int count, Route route = Route::ClosedForm);

/// Uniform entry point; T families delegate to the matching S generator with
/// mu_x and mu_y swapped.
CoefficientSequence gen_family(Family family, double mu_x, double mu_y, int count,
                               Route route = Route::ClosedForm);

const char* family_name(Family family);
Family family_from_name(const std::string& name);

/// Large-n reference values. s0 decays like n^{-3/2}, s1 like n^{-1/2};
/// no closed asymptotic form is implemented for s2.
double asymptotic_s0(int n, double mu_x);
double asymptotic_s1(int n, double mu_x, double mu_y);
bool has_asymptotic(Family family);
double asymptotic_value(Family family, int n, double mu_x, double mu_y);

} // namespace dtbc::coeffs
