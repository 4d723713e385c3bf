#ifndef GI_SCATTERING_HPP
#define GI_SCATTERING_HPP

#include <optional>

#include "gi/closed_forms.hpp"
#include "gi/omega.hpp"
#include "gi/types.hpp"

namespace gi {

struct StepControl {
    double rtol = 1e-11;
    double atol = 1e-13;
    double initial_step = 1e-2;
    long max_steps = 400000;
};

enum class ColumnRequest { Auto, Both, First, Second };

struct ScatteringResult {
    Matrix2 s;            // mu_3(0,0,k); unset columns are zero
    bool has_first = false;
    bool has_second = false;
};

struct ScatteringData {
    Complex k;
    Matrix2 s;            // entries a, b in the symmetry form
    Matrix2 S;            // entries A, B (background-exact)
    double residual_global = 0.0; // |A b - a B|
};

// Integrates mu_x + i k^2 [sigma3, mu] = U mu downward from x_max (mu = I)
// and returns mu_3(0,0,k). Columns are handled separately where their
// exponential factor would overflow:
//   first column valid for Im k^2 <= 0, second for Im k^2 >= 0,
//   both when |Im k^2| x_max < 30.
// Throws ValidityError when a requested column is not integrable, and
// StiffnessError when step control fails.
ScatteringResult compute_s(const SolutionProfile& q0, Complex k, double x_max,
                           const StepControl& ctl = {},
                           ColumnRequest request = ColumnRequest::Auto);

double default_x_max(const SolutionProfile& q0);

// S(k) = E(k) for boundary data exactly equal to the background. When a
// profile is supplied its boundary values are checked first and
// NotExactBackgroundError is thrown if they deviate.
Matrix2 compute_S_exact_background(const ParameterTriple& triple,
                                   const OmegaEvaluator& ev, Complex k,
                                   const SolutionProfile* profile = nullptr);

// |A(k) b(k) - a(k) B(k)| with A, B from the background-exact S(k) and a, b
// from the ODE integration of the initial data. RegionError if k lies
// outside the closure of the unbounded D1 components.
double global_relation_residual(const ParameterTriple& triple,
                                const OmegaEvaluator& ev,
                                const SolutionProfile& q0, Complex k,
                                const StepControl& ctl = {});

ScatteringData scattering_data(const ParameterTriple& triple,
                               const OmegaEvaluator& ev,
                               const SolutionProfile& q0, Complex k,
                               const StepControl& ctl = {});

} // namespace gi

#endif
