#pragma once

// Ensemble averaging over channel entry points, with optional Gaussian
// beam divergence in entry angle and energy.
//
// Entry points are the deterministic grid x0_n = -d/2 + (n + 1/2) d / N.
// All reductions run in fixed entry order, so results are bit-identical
// for a given (config, seed) regardless of the worker thread count
// (capped by the CHANNELSPIN_THREADS environment variable; 0 = auto).

#include <cstdint>
#include <random>
#include <vector>

#include "channelspin/model.hpp"

namespace channelspin {

struct EnsembleConfig {
    int n_points = 200;            // entry points N
    double theta_mean_rad = 0.0;   // beam entry angle
    double gamma_mean = 0.0;       // beam Lorentz factor
    double sigma_theta_rad = 0.0;  // angular spread (used when divergence on)
    double sigma_gamma = 0.0;      // energy spread (used when divergence on)
    std::uint64_t seed = 1;
    double depth_max_m = 0.01;
    int n_depth_samples = 2000;    // uniform depths including 0 and depth_max
};

enum class CrystalMode { bent, straight };
enum class Divergence { off, on };

struct DepthScan {
    std::vector<double> depths_m;
    std::vector<double> avg_zeta_x;
    std::vector<double> avg_zeta_y;
    std::vector<double> avg_phi_rad;
    long n_channeled = 0;
    long n_rejected = 0;
    // True when depth_max exceeds 0.1 * dechanneling length; scans beyond
    // that bound leave the model's validity region.
    bool exceeds_dechanneling_bound = false;
};

struct CurvatureScan {
    std::vector<double> depths_m;
    std::vector<double> phi_cr_rad;          // <phi>_bent - <phi>_straight
    std::vector<double> phi_lyuboshitz_rad;  // reference curve at Psi = Omega t
};

// x0_n = -d/2 + (n + 1/2) d / N, all strictly inside (-d/2, d/2).
std::vector<double> entry_grid(int n_points, const CrystalChannel& channel);

// mean + sigma * z with z standard normal (Box-Muller). Always consumes the
// same number of engine draws regardless of sigma, so runs with different
// spreads stay pairable under a common seed; sigma = 0 returns mean exactly.
double gaussian_sample(double mean, double sigma, std::mt19937_64& engine);

// Averaged in-plane polarization versus depth, perpendicular initial spin.
// Entries with eps_perp >= V0 (or a sampled gamma <= 1) are counted as
// rejected and excluded. Throws AllRejected when nothing channels.
DepthScan average_components(const EnsembleConfig& config, const ParticleSpec& particle,
                             const CrystalChannel& channel, CrystalMode mode,
                             Divergence divergence);

// arcsin(avg_zeta_y / norm) per depth. Throws DegenerateInPlane.
std::vector<double> averaged_angle(const std::vector<double>& avg_zeta_x,
                                   const std::vector<double>& avg_zeta_y);

// Paired bent/straight scans under common samples; phi_cr = the angle
// difference, compared against lyuboshitz_angle(g, gamma_mean, Omega t).
CurvatureScan curvature_contribution(const EnsembleConfig& config,
                                     const ParticleSpec& particle,
                                     const CrystalChannel& channel,
                                     Divergence divergence = Divergence::off);

// average_components with Omega scaled everywhere it enters (frame rotation
// phi, the precession rate, and the phase constants). scale = 1 reproduces
// average_components bit for bit.
DepthScan scaled_omega_scan(const EnsembleConfig& config, const ParticleSpec& particle,
                            const CrystalChannel& channel, double omega_scale,
                            CrystalMode mode, Divergence divergence);

// Worker count: CHANNELSPIN_THREADS, clamped to [1, n_tasks]; 0/unset = auto.
int resolve_thread_count(int n_tasks);

}  // namespace channelspin
