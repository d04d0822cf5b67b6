#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace chainflow {

// Units used throughout: time µs, potential mV, conductance µS,
// capacitance pF, current nA. With this set the membrane equation
// needs no conversion factors (µS·mV = nA, nA/pF = mV/µs).

struct ChainParameters {
    int n_compartments = 4;
    Eigen::VectorXd g_leak;   // µS, one per compartment
    Eigen::VectorXd g_axial;  // µS, one per inter-compartment connection
    double c_m = 125.0;       // pF
    double v_leak = 0.0;      // mV, common rest potential
    double tau_syn = 10.0;    // µs
    double w_syn = 2.2;       // nA at kernel onset

    void validate() const;
};

enum class ParameterLayout {
    global_2d,       // [g_leak, g_axial] broadcast to the whole chain
    per_element_7d,  // n leaks followed by n-1 axial values, index order
};

struct DigitalParameterSpace {
    double digital_min = 0.0;
    double digital_max = 1022.0;
    // Physical endpoints of the affine digital->conductance maps.
    // Leak range is pinned by tau_m = c_m / g_leak spanning 12..30 µs.
    double g_leak_min = 125.0 / 30.0;   // µS
    double g_leak_max = 125.0 / 12.0;   // µS
    double g_axial_min = 0.05;          // µS, calibrated (see defaults())
    double g_axial_max = 15.0;          // µS

    static DigitalParameterSpace defaults() { return {}; }

    double decode_leak(double digital) const;
    double decode_axial(double digital) const;
    int theta_dim(ParameterLayout layout, int n_compartments = 4) const;
};

struct StimulusProtocol {
    Eigen::VectorXd onset_times;         // µs, one synaptic event per compartment
    double inter_stimulus_interval = 240.0;  // µs
    double total_duration = 980.0;           // µs
    double dt = 0.1;                          // µs

    // One input per compartment, first onset late enough for a 10 µs
    // baseline window, gaps of 8x the slowest membrane time constant.
    static StimulusProtocol defaults(int n_compartments = 4, double max_tau_m = 30.0,
                                     double tau_syn = 10.0);

    void validate(double tau_syn, double max_tau_m = 30.0) const;
    int n_steps() const;
};

struct NoiseModel {
    double conductance_jitter_cv = 0.05;  // multiplicative, per trial
    double voltage_noise_sd = 0.3;        // mV, white, per recorded sample
    bool enabled = true;

    static NoiseModel disabled_model() { return {0.0, 0.0, false}; }
    void validate() const;
};

struct TraceSet {
    Eigen::VectorXd times;    // µs, length T
    Eigen::MatrixXd voltages; // n_compartments x T, mV
};

// Digital vector -> physical parameters. Throws ShapeError on wrong length,
// DomainError (naming the coordinate) on out-of-bounds values.
ChainParameters decode_parameters(const Eigen::VectorXd& theta_digital,
                                  const DigitalParameterSpace& space,
                                  ParameterLayout layout,
                                  int n_compartments = 4);

// Exponential-Euler integration of the passive chain driven by one
// exponential-kernel synaptic event per compartment. Bit-identical output
// for identical (params, protocol, noise, seed).
TraceSet simulate_chain(const ChainParameters& params, const StimulusProtocol& protocol,
                        const NoiseModel& noise, std::uint64_t seed);

// Same integrator with an arbitrary injected-current function (nA, per
// compartment); used by tests that need step currents.
TraceSet integrate_currents(const ChainParameters& params,
                            const std::function<void(double t, Eigen::VectorXd& i_out)>& current,
                            double total_duration, double dt);

// decode + simulate; the single "simulator call" counted by round budgets.
TraceSet run_trial(const Eigen::VectorXd& theta_digital, const DigitalParameterSpace& space,
                   ParameterLayout layout, const StimulusProtocol& protocol,
                   const NoiseModel& noise, std::uint64_t seed);

// CSV with header time_us,v0,...,v{n-1}
void write_trace_csv(std::ostream& out, const TraceSet& traces);

}  // namespace chainflow
