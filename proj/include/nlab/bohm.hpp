#ifndef NLAB_BOHM_HPP
#define NLAB_BOHM_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nlab/errors.hpp"
#include "nlab/rng.hpp"

namespace nlab::bohm {

using Complex = std::complex<double>;

// Superposition of freely-spreading Gaussian packets (hbar = m = 1). Each
// packet is the boosted ground Gaussian
//   psi_k(x,t) = (1+it)^{-1/2} pi^{-1/4} exp(ikx - ik^2 t/2 - (x-kt)^2/(2(1+it)))
// so psi_k(x,0) = pi^{-1/4} e^{-x^2/2} e^{ikx}. Coefficients are normalized
// at construction using the exact Gaussian overlaps.
struct Packet {
    double boost = 0.0;
    Complex coefficient = 1.0;
};

class GaussianPacketModel {
public:
    explicit GaussianPacketModel(std::vector<Packet> packets);

    static GaussianPacketModel ground();                 // single packet, k = 0
    static GaussianPacketModel boosted(double k);        // single packet e^{ikx}
    static GaussianPacketModel symmetric_pair(double k); // equal +-k weights
    // Post-measurement pair with coefficients proportional to e^{+-i k y0}.
    static GaussianPacketModel collapsed_pair(double k, double y0);

    const std::vector<Packet>& packets() const { return packets_; }

    Complex evaluate(double x, double t) const;  // full wave function
    double density(double x, double t) const;    // |psi|^2

    // Im(d_x psi / psi); throws NearNode when |psi| falls below the node
    // floor of 1e-12 relative to the packet scale.
    double velocity(double x, double t) const;

    // Draw from |psi(.,0)|^2: Gaussian envelope with exact rejection on the
    // interference factor.
    double sample_initial_position(SeededRng& rng) const;

private:
    std::vector<Packet> packets_;
};

double velocity_field(const GaussianPacketModel& model, double x, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<double> positions;
    double step_size = 0.0;     // nominal
    std::string method = "rk4";
};

// Classical fourth-order integration of dx/dt = velocity(x,t) on [t0, t1]
// with fixed nominal step dt; steps that run into a node are halved (up to
// 20 levels, then StepUnderflow).
Trajectory integrate_trajectory(const GaussianPacketModel& model, double x0, double t0, double t1,
                                double dt);
// Same integration, returning only the final position.
double integrate_final(const GaussianPacketModel& model, double x0, double t0, double t1,
                       double dt);

// X(T)/T, the finite-horizon estimate of lim X(t)/t. Throws HorizonTooShort
// when the trajectory ends before min_horizon.
double asymptotic_momentum(const Trajectory& traj, double min_horizon);

struct MomentumStatisticsReport {
    long trials = 0;
    double t_final = 0.0;
    double dt = 0.0;
    double ks_statistic = 0.0;
    double ks_p_value = 0.0;
    double sample_mean = 0.0;
    double sample_variance = 0.0;
    std::vector<double> estimates;
};

// Free flight of the ground packet: samples X(0) from the exact Gaussian
// |psi_0|^2, integrates to t_final, and tests the X(T)/T estimates against
// the momentum-space density pi^{-1/2} e^{-p^2}.
MomentumStatisticsReport momentum_statistics(long trials, double t_final, std::uint64_t seed,
                                             double dt = 0.01);

struct EquivarianceReport {
    long trials = 0;
    double time = 0.0;
    double dt = 0.0;
    double ks_statistic = 0.0;
    double ks_p_value = 0.0;
    double sample_mean = 0.0;
    double sample_variance = 0.0;
    double right_mass = 0.0;  // fraction of transported samples with x > 0
    std::vector<double> positions;
};

// Transports |psi(.,0)|^2 samples along trajectories to time t and
// KS-tests the cloud against |psi(.,t)|^2.
EquivarianceReport equivariance_test(const GaussianPacketModel& model, double t, long trials,
                                     std::uint64_t seed, double dt = 1e-3);

// Rotated pair coordinates w = (x+y)/sqrt(2), z = (x-y)/sqrt(2).
std::pair<double, double> wz_from_xy(double x, double y);
std::pair<double, double> xy_from_wz(double w, double z);

struct ContextualityParams {
    double k = 10.0;      // packet boost; the asymptotic readout is +-k
    double horizon = 50.0;
    double dt = 1e-3;     // must satisfy dt <= 0.01 * min(1, 1/k)
    long trials = 1000;
    std::uint64_t seed = 1;

    void validate() const;
};

// Momentum readout with nothing else measured: the pair dynamics factorizes
// in (w, z), the w half rides the symmetric two-packet state, and the sign
// of the result follows sgn(x0 + y0). Throws DegenerateInitial when x0 + y0
// sits on the symmetry axis.
double experiment1(const ContextualityParams& params, double x0, double y0);

// Momentum readout after a position measurement on the partner particle at
// t = 0 (which, positions being real, returns y0 and collapses the pair
// state): the sign now follows sgn(x0). Throws DegenerateInitial when x0 is
// too close to 0 or to the post-collapse median.
double experiment2(const ContextualityParams& params, double x0, double y0, SeededRng& rng);

// Median of the post-collapse density e^{-x^2} cos^2(k(x+y0)); the sign
// boundary of experiment2. Always within pi/(2k) of the origin.
double collapsed_median(double k, double y0);

// Half-width of the exclusion band around the collapsed median inside which
// experiment2 declines to certify a sign.
double experiment2_exclusion_band(double k);

struct TrialOutcome {
    double x0 = 0.0, y0 = 0.0;
    bool exp1_admissible = false, exp2_admissible = false;
    double p1 = 0.0, p2 = 0.0;
};

struct ContextualityReport {
    ContextualityParams params;
    long samples = 0;
    long exp1_admissible = 0;
    long exp1_sign_matches = 0;  // sign(p1) == sgn(x0 + y0)
    long exp2_admissible = 0;
    long exp2_sign_matches = 0;  // sign(p2) == sgn(x0)
    long both_admissible = 0;
    long disagreements = 0;      // sign(p1) != sign(p2)
    double exp1_agreement_rate = 0.0;
    double exp2_agreement_rate = 0.0;
    double disagreement_fraction = 0.0;
    std::vector<TrialOutcome> outcomes;
};

// Draw (x0, y0) from the joint |psi(x,y,0)|^2 of the entangled pair state:
// Gaussian proposals per axis with exact acceptance cos^2(k(x+y)).
std::pair<double, double> sample_pair_initial(double k, SeededRng& rng);

// Samples (x0, y0) from the joint |psi(x,y,0)|^2 of the entangled pair state
// and runs both experiments on every sample.
ContextualityReport contextuality_report(const ContextualityParams& params);

// Direct two-dimensional integration of the entangled pair state, without
// the (w,z) factorization; cross-check for the factorized route.
std::pair<double, double> integrate_pair_direct(double k, double x0, double y0, double t1,
                                                double dt);

struct NoCrossingReport {
    int pairs = 0;
    long steps = 0;
    long crossings = 0;   // adjacent-pair order violations beyond 1e-9
    double min_gap = 0.0; // most negative adjacent gap observed
};

// Integrates trajectories from sorted starts in lockstep and checks that the
// order never inverts.
NoCrossingReport no_crossing_check(const GaussianPacketModel& model, std::vector<double> starts,
                                   double t1, double dt);

}  // namespace nlab::bohm

#endif
