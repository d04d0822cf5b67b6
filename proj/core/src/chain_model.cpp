#include "chainflow/chain_model.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "chainflow/errors.hpp"
#include "chainflow/rng.hpp"

namespace chainflow {

void ChainParameters::validate() const {
    if (n_compartments < 1) throw DomainError("n_compartments must be >= 1");
    if (g_leak.size() != n_compartments)
        throw ShapeError("g_leak must have one entry per compartment, got " +
                         std::to_string(g_leak.size()) + " for n=" +
                         std::to_string(n_compartments));
    if (g_axial.size() != n_compartments - 1)
        throw ShapeError("g_axial must have n-1 entries, got " +
                         std::to_string(g_axial.size()) + " for n=" +
                         std::to_string(n_compartments));
    if ((g_leak.array() < 0.0).any() || (g_axial.array() < 0.0).any())
        throw DomainError("conductances must be >= 0");
    if (!(c_m > 0.0)) throw DomainError("c_m must be > 0");
    if (!(tau_syn > 0.0)) throw DomainError("tau_syn must be > 0");
}

double DigitalParameterSpace::decode_leak(double digital) const {
    const double f = (digital - digital_min) / (digital_max - digital_min);
    return g_leak_min + f * (g_leak_max - g_leak_min);
}

double DigitalParameterSpace::decode_axial(double digital) const {
    const double f = (digital - digital_min) / (digital_max - digital_min);
    return g_axial_min + f * (g_axial_max - g_axial_min);
}

int DigitalParameterSpace::theta_dim(ParameterLayout layout, int n_compartments) const {
    return layout == ParameterLayout::global_2d ? 2 : 2 * n_compartments - 1;
}

StimulusProtocol StimulusProtocol::defaults(int n_compartments, double max_tau_m,
                                            double tau_syn) {
    StimulusProtocol p;
    const double gap = 8.0 * std::max(max_tau_m, tau_syn);
    p.inter_stimulus_interval = gap;
    p.onset_times.resize(n_compartments);
    const double t0 = 20.0;  // leaves a 10 µs baseline window before the first input
    for (int i = 0; i < n_compartments; ++i) p.onset_times[i] = t0 + i * gap;
    p.total_duration = t0 + n_compartments * gap;
    p.dt = 0.1;
    return p;
}

void StimulusProtocol::validate(double tau_syn, double max_tau_m) const {
    if (onset_times.size() < 1) throw ShapeError("protocol needs at least one onset");
    if (!(dt > 0.0)) throw DomainError("dt must be > 0");
    if (dt > tau_syn / 20.0)
        throw DomainError("dt must be <= tau_syn/20 for kernel resolution");
    const double min_gap = 8.0 * max_tau_m;
    for (int i = 0; i + 1 < onset_times.size(); ++i) {
        if (!(onset_times[i + 1] > onset_times[i]))
            throw DomainError("onset_times must be strictly increasing");
        if (onset_times[i + 1] - onset_times[i] < min_gap)
            throw DomainError("onset gap below 8x the slowest membrane time constant");
    }
    if (onset_times[onset_times.size() - 1] >= total_duration)
        throw DomainError("last onset beyond total_duration");
}

int StimulusProtocol::n_steps() const {
    return static_cast<int>(std::llround(total_duration / dt));
}

void NoiseModel::validate() const {
    if (conductance_jitter_cv < 0.0) throw DomainError("conductance_jitter_cv must be >= 0");
    if (voltage_noise_sd < 0.0) throw DomainError("voltage_noise_sd must be >= 0");
}

ChainParameters decode_parameters(const Eigen::VectorXd& theta_digital,
                                  const DigitalParameterSpace& space,
                                  ParameterLayout layout, int n_compartments) {
    const int want = space.theta_dim(layout, n_compartments);
    if (theta_digital.size() != want) {
        std::ostringstream msg;
        msg << "theta has length " << theta_digital.size() << ", layout requires " << want;
        throw ShapeError(msg.str());
    }
    for (int k = 0; k < theta_digital.size(); ++k) {
        const double v = theta_digital[k];
        if (!(v >= space.digital_min && v <= space.digital_max)) {
            std::ostringstream msg;
            msg << "coordinate " << k << " = " << v << " outside digital range ["
                << space.digital_min << ", " << space.digital_max << "]";
            throw DomainError(msg.str());
        }
    }

    ChainParameters p;
    p.n_compartments = n_compartments;
    p.g_leak.resize(n_compartments);
    p.g_axial.resize(n_compartments - 1);
    if (layout == ParameterLayout::global_2d) {
        p.g_leak.setConstant(space.decode_leak(theta_digital[0]));
        p.g_axial.setConstant(space.decode_axial(theta_digital[1]));
    } else {
        for (int i = 0; i < n_compartments; ++i)
            p.g_leak[i] = space.decode_leak(theta_digital[i]);
        for (int j = 0; j + 1 < n_compartments; ++j)
            p.g_axial[j] = space.decode_axial(theta_digital[n_compartments + j]);
    }
    return p;
}

TraceSet integrate_currents(const ChainParameters& params,
                            const std::function<void(double, Eigen::VectorXd&)>& current,
                            double total_duration, double dt) {
    params.validate();
    const int n = params.n_compartments;
    const int steps = static_cast<int>(std::llround(total_duration / dt));

    TraceSet out;
    out.times.resize(steps);
    out.voltages.resize(n, steps);

    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, params.v_leak);
    Eigen::VectorXd v_next(n);
    Eigen::VectorXd i_inj(n);

    for (int s = 0; s < steps; ++s) {
        const double t = s * dt;
        out.times[s] = t;
        out.voltages.col(s) = v;

        i_inj.setZero();
        current(t, i_inj);

        // exponential Euler on the leak term; synaptic and axial currents
        // are held constant over the step
        for (int i = 0; i < n; ++i) {
            double i_ax = 0.0;
            if (i > 0) i_ax += params.g_axial[i - 1] * (v[i - 1] - v[i]);
            if (i + 1 < n) i_ax += params.g_axial[i] * (v[i + 1] - v[i]);
            const double a = params.g_leak[i] / params.c_m;  // 1/µs
            const double b = (params.g_leak[i] * params.v_leak + i_inj[i] + i_ax) / params.c_m;
            const double adt = a * dt;
            if (adt < 1e-12) {
                v_next[i] = v[i] + (b - a * v[i]) * dt;
            } else {
                const double v_inf = b / a;
                v_next[i] = v_inf + (v[i] - v_inf) * std::exp(-adt);
            }
        }
        v.swap(v_next);

        if (!v.allFinite())
            throw NumericalInstabilityError("non-finite membrane state", s);
    }
    return out;
}

TraceSet simulate_chain(const ChainParameters& params, const StimulusProtocol& protocol,
                        const NoiseModel& noise, std::uint64_t seed) {
    params.validate();
    noise.validate();
    const double max_tau_m = params.g_leak.minCoeff() > 0.0
                                 ? params.c_m / params.g_leak.minCoeff()
                                 : std::numeric_limits<double>::infinity();
    protocol.validate(params.tau_syn, max_tau_m);
    if (protocol.onset_times.size() != params.n_compartments)
        throw ShapeError("protocol must carry one onset per compartment");

    ChainParameters p = params;
    Rng rng(seed);
    if (noise.enabled && noise.conductance_jitter_cv > 0.0) {
        for (int i = 0; i < p.g_leak.size(); ++i)
            p.g_leak[i] = std::max(0.0, p.g_leak[i] * (1.0 + noise.conductance_jitter_cv * rng.normal()));
        for (int j = 0; j < p.g_axial.size(); ++j)
            p.g_axial[j] = std::max(0.0, p.g_axial[j] * (1.0 + noise.conductance_jitter_cv * rng.normal()));
    }

    const Eigen::VectorXd onsets = protocol.onset_times;
    const double w = p.w_syn;
    const double tau_s = p.tau_syn;
    auto syn = [&](double t, Eigen::VectorXd& i_out) {
        for (int i = 0; i < onsets.size(); ++i) {
            const double dt_on = t - onsets[i];
            if (dt_on >= 0.0) i_out[i] += w * std::exp(-dt_on / tau_s);
        }
    };

    TraceSet traces = integrate_currents(p, syn, protocol.total_duration, protocol.dt);

    if (noise.enabled && noise.voltage_noise_sd > 0.0) {
        for (int s = 0; s < traces.voltages.cols(); ++s)
            for (int i = 0; i < traces.voltages.rows(); ++i)
                traces.voltages(i, s) += noise.voltage_noise_sd * rng.normal();
    }
    return traces;
}

TraceSet run_trial(const Eigen::VectorXd& theta_digital, const DigitalParameterSpace& space,
                   ParameterLayout layout, const StimulusProtocol& protocol,
                   const NoiseModel& noise, std::uint64_t seed) {
    const int n = static_cast<int>(protocol.onset_times.size());
    const ChainParameters params = decode_parameters(theta_digital, space, layout, n);
    return simulate_chain(params, protocol, noise, seed);
}

void write_trace_csv(std::ostream& out, const TraceSet& traces) {
    out << "time_us";
    for (int i = 0; i < traces.voltages.rows(); ++i) out << ",v" << i;
    out << "\n";
    char buf[64];
    for (int s = 0; s < traces.times.size(); ++s) {
        std::snprintf(buf, sizeof(buf), "%.17g", traces.times[s]);
        out << buf;
        for (int i = 0; i < traces.voltages.rows(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", traces.voltages(i, s));
            out << ',' << buf;
        }
        out << "\n";
    }
}

}  // namespace chainflow
