#include "spikecom/calibration.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "spikecom/errors.hpp"

namespace spikecom {

double charging_time(const NeuronParams& p, double a_max) {
    if (p.tau_ms <= 0.0) {
        throw ParameterError("calibration: tau must be positive");
    }
    if (a_max <= 0.0) {
        throw ParameterError("calibration: a_max must be positive");
    }
    const double plateau = 2.0 * a_max * p.r_membrane;
    if (plateau <= p.v_th) {
        throw ParameterError("calibration: drive too weak to fire (plateau " +
                             std::to_string(plateau) + " V <= threshold " +
                             std::to_string(p.v_th) + " V)");
    }
    // v(t) = plateau + (v_reset - plateau) e^{-t/tau}; solve v(t) = v_th.
    return p.tau_ms * std::log((plateau - p.v_reset) / (plateau - p.v_th));
}

double active_isi(const NeuronParams& p, double a_max) {
    return p.t_refract_ms + charging_time(p, a_max);
}

double amax_for_target_isi(const NeuronParams& p, double target_isi_ms) {
    validate(p);
    if (target_isi_ms <= p.t_refract_ms) {
        throw ParameterError("calibration: target ISI must exceed the refractory period");
    }
    const double x = std::exp((target_isi_ms - p.t_refract_ms) / p.tau_ms);
    return (x * p.v_th - p.v_reset) / (2.0 * (x - 1.0) * p.r_membrane);
}

bool response_feasible(const NeuronParams& p, const SynapseConfig& syn, double isi_ms) {
    if (isi_ms <= 0.0) {
        throw ParameterError("calibration: ISI must be positive");
    }
    validate(syn);
    // Second kick lands on the residual of the first.
    return syn.w_excitatory * (std::exp(-isi_ms / p.tau_ms) + 1.0) >= p.v_th;
}

BipolarThresholds bipolar_thresholds(int r1, int r2, int community_order, double avg_degree,
                                     double neighbor_fraction) {
    if (r1 < 0 || r2 < 0) {
        throw ParameterError("calibration: spike counts must be nonnegative");
    }
    if (community_order < 1) {
        throw ParameterError("calibration: community order must be at least 1");
    }
    if (avg_degree < 0.0) {
        throw ParameterError("calibration: average degree must be nonnegative");
    }
    if (neighbor_fraction < 0.0 || neighbor_fraction > 1.0) {
        throw ParameterError("calibration: neighbor fraction must lie in [0, 1]");
    }
    BipolarThresholds t;
    t.f_max = static_cast<double>(r1) + static_cast<double>(community_order - 1) * r2;
    t.f_min =
        static_cast<double>(r1) + (avg_degree * neighbor_fraction + 1.0) * static_cast<double>(r2);
    t.bounds_crossed = t.f_min >= t.f_max && r2 > 0;
    if (t.bounds_crossed) {
        std::cerr << "warning: firing-count bounds crossed (f_min " << t.f_min << " >= f_max "
                  << t.f_max << "); community too small for the response model\n";
    }
    return t;
}

CalibrationReport calibrate(const NeuronParams& p, const SynapseConfig& syn, double a_max,
                            double pulse_width_ms, int community_order, double avg_degree,
                            double neighbor_fraction) {
    validate(p);
    validate(syn);
    if (pulse_width_ms <= 0.0) {
        throw ParameterError("calibration: pulse width must be positive");
    }
    CalibrationReport rep;
    rep.charging_ms = charging_time(p, a_max);
    rep.active_isi_ms = p.t_refract_ms + rep.charging_ms;
    rep.response_isi_ms = 2.0 * rep.active_isi_ms;
    rep.alpha = std::abs(syn.w_excitatory) / p.v_th;
    rep.response_ok = response_feasible(p, syn, rep.active_isi_ms);
    // First spike lands after the charging time, each later one a full period
    // after its predecessor.
    rep.r1 = pulse_width_ms < rep.charging_ms
                 ? 0
                 : 1 + static_cast<int>(
                           std::floor((pulse_width_ms - rep.charging_ms) / rep.active_isi_ms));
    // A super-threshold weight fires the neighbor on every kick; otherwise a
    // feasible response needs two kicks per spike.
    if (rep.alpha >= 1.0) {
        rep.r2 = rep.r1;
    } else {
        rep.r2 = rep.response_ok ? rep.r1 / 2 : 0;
    }
    const BipolarThresholds t =
        bipolar_thresholds(rep.r1, rep.r2, community_order, avg_degree, neighbor_fraction);
    rep.f_min = t.f_min;
    rep.f_max = t.f_max;
    rep.bounds_crossed = t.bounds_crossed;
    return rep;
}

}  // namespace spikecom
