#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "chainflow/chain_model.hpp"

namespace chainflow {

struct PspHeightMatrix {
    // h(i, j): PSP height in compartment i for an input to compartment j,
    // measured as peak above the pre-stimulus baseline.
    Eigen::MatrixXd h;
    Eigen::VectorXd baseline;  // per-compartment reference, mV
};

enum class ObservableKind { tau, first_column, full_matrix };

int observable_dim(ObservableKind kind, int n_compartments = 4);
std::string to_string(ObservableKind kind);
ObservableKind observable_kind_from_string(const std::string& s);

struct ObservableVector {
    ObservableKind kind = ObservableKind::tau;
    Eigen::VectorXd values;  // length 1 (tau), n (first_column) or n^2 (full_matrix)
};

struct DecayFit {
    double tau = 0.0;        // spatial decay constant, in compartments
    double amplitude = 0.0;  // fitted height at compartment 0
    bool flat = false;       // true when the fit ran into the tau cap
    int iterations = 0;
};

// Decay constants above this are reported as "flat" and capped, so the
// observable stays finite when PSPs barely attenuate.
inline constexpr double kTauCap = 100.0;

// Peak-above-baseline extraction per input window. Baseline is the mean over
// the 10 µs preceding each onset; traces are smoothed with a 1 µs moving
// average before peak picking so white observation noise does not inflate
// the window maximum.
PspHeightMatrix extract_psp_heights(const TraceSet& traces, const StimulusProtocol& protocol);

// Least-squares fit of F_i ~ A exp(-i / tau) over compartment index i
// (Levenberg-Marquardt, seeded from the log-linear regression slope).
DecayFit fit_decay_constant(const Eigen::VectorXd& first_column_heights);

ObservableVector observable_vector(const PspHeightMatrix& H, ObservableKind kind);

// CSV row per trial: theta..., kind, x...
void write_observable_csv_header(std::ostream& out, int theta_dim, int x_dim);
void write_observable_csv_row(std::ostream& out, const Eigen::VectorXd& theta,
                              ObservableKind kind, const Eigen::VectorXd& x);

}  // namespace chainflow
