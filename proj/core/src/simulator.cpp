#include "spikecom/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "spikecom/errors.hpp"

namespace spikecom {

long long SpikeData::total_spikes() const {
    long long total = 0;
    for (const auto& train : trains) {
        total += static_cast<long long>(train.size());
    }
    return total;
}

void validate(const SpikeData& spikes, double t_refract_ms) {
    if (spikes.n < 0 || static_cast<int>(spikes.trains.size()) != spikes.n) {
        throw DataError("spike data: train count does not match neuron count");
    }
    for (int i = 0; i < spikes.n; ++i) {
        const auto& train = spikes.trains[i];
        for (std::size_t k = 0; k < train.size(); ++k) {
            if (train[k] < -1e-9 || train[k] > spikes.duration_ms + 1e-9) {
                throw DataError("spike data: neuron " + std::to_string(i) +
                                " spike outside [0, duration]");
            }
            if (k > 0) {
                const double isi = train[k] - train[k - 1];
                if (isi <= 0.0) {
                    throw DataError("spike data: neuron " + std::to_string(i) +
                                    " train not strictly increasing");
                }
                if (isi < t_refract_ms - 1e-9) {
                    throw DataError("spike data: neuron " + std::to_string(i) +
                                    " violates refractory separation");
                }
            }
        }
    }
}

namespace {

struct Engine {
    const SpikingNetwork& net;
    const DriveSchedule& schedule;
    const SimulationConfig& cfg;

    double duration_ms = 0.0;
    long long steps = 0;
    int ref_steps = 0;
    double decay = 0.0;
    // tanh saturates exactly in double beyond ~20/beta, so a pulse is
    // identically zero outside [t1 - pad, t2 + pad].
    std::vector<double> pulse_pad;

    Engine(const SpikingNetwork& net_, const DriveSchedule& schedule_,
           const SimulationConfig& cfg_)
        : net(net_), schedule(schedule_), cfg(cfg_) {
        validate(net);
        validate(schedule, net.n);
        const auto& p = net.params;
        if (cfg.dt_ms <= 0.0) {
            throw ParameterError("simulation: dt must be positive");
        }
        if (p.t_refract_ms > 0.0 && cfg.dt_ms > p.t_refract_ms / 2.0) {
            throw ParameterError("simulation: dt must not exceed half the refractory period");
        }
        if (cfg.dt_ms > p.tau_ms / 50.0) {
            std::cerr << "warning: dt " << cfg.dt_ms << " ms is coarse relative to tau "
                      << p.tau_ms << " ms\n";
        }
        duration_ms = cfg.duration_ms > 0.0 ? cfg.duration_ms : schedule.total_duration_ms;
        if (duration_ms <= 0.0) {
            throw ParameterError("simulation: duration is zero and the schedule has no horizon");
        }
        steps = static_cast<long long>(std::ceil(duration_ms / cfg.dt_ms - 1e-9));
        ref_steps = p.t_refract_ms > 0.0
                        ? static_cast<int>(std::ceil(p.t_refract_ms / cfg.dt_ms - 1e-9))
                        : 0;
        decay = std::exp(-cfg.dt_ms / p.tau_ms);
        pulse_pad.reserve(schedule.pulses.size());
        for (const auto& pulse : schedule.pulses) {
            pulse_pad.push_back(25.0 / pulse.beta);
        }
    }

    void run(SpikeData& out, std::vector<MembraneTrace>& traces) {
        const auto& p = net.params;
        const int n = net.n;
        std::vector<double> v(n, p.v_rest);
        std::vector<double> pending(n, 0.0);
        std::vector<int> refract(n, 0);
        std::vector<int> fired;

        out.n = n;
        out.duration_ms = duration_ms;
        out.trains.assign(n, {});

        for (auto& trace : traces) {
            trace.time_ms.push_back(0.0);
            trace.potential_v.push_back(p.v_rest);
        }

        std::size_t lo = 0;  // first pulse whose padded window has not ended
        for (long long step = 0; step < steps; ++step) {
            const double t = static_cast<double>(step) * cfg.dt_ms;
            while (lo < schedule.pulses.size() &&
                   schedule.pulses[lo].t2_ms + pulse_pad[lo] < t) {
                ++lo;
            }

            for (int i = 0; i < n; ++i) {
                if (refract[i] > 0) {
                    v[i] = p.v_reset;
                    --refract[i];
                    continue;
                }
                double vext = 0.0;
                for (std::size_t k = lo; k < schedule.pulses.size(); ++k) {
                    const auto& pulse = schedule.pulses[k];
                    if (pulse.t1_ms - pulse_pad[k] > t) {
                        break;
                    }
                    if (pulse.target == i) {
                        vext += pulse_value(pulse, t);
                    }
                }
                vext *= p.r_membrane;
                v[i] = vext + (v[i] - vext) * decay;
                v[i] += pending[i];
                if (cfg.has_potential_floor && v[i] < cfg.potential_floor_v) {
                    v[i] = cfg.potential_floor_v;
                }
                if (!std::isfinite(v[i])) {
                    throw DataError("simulation diverged: non-finite potential for neuron " +
                                    std::to_string(i) + " at t=" + std::to_string(t) + " ms");
                }
                if (v[i] >= p.v_th) {
                    out.trains[i].push_back(static_cast<double>(step + 1) * cfg.dt_ms);
                    v[i] = p.v_reset;
                    refract[i] = ref_steps;
                    fired.push_back(i);
                }
            }

            std::fill(pending.begin(), pending.end(), 0.0);
            for (int f : fired) {
                const auto row = net.row(f);
                for (int i = 0; i < n; ++i) {
                    pending[i] += row[i];
                }
            }
            fired.clear();

            for (auto& trace : traces) {
                trace.time_ms.push_back(static_cast<double>(step + 1) * cfg.dt_ms);
                trace.potential_v.push_back(v[trace.neuron]);
            }
        }
    }
};

}  // namespace

SpikeData run_simulation(const SpikingNetwork& net, const DriveSchedule& schedule,
                         const SimulationConfig& cfg) {
    Engine engine(net, schedule, cfg);
    SpikeData out;
    std::vector<MembraneTrace> no_traces;
    engine.run(out, no_traces);
    return out;
}

std::vector<MembraneTrace> record_membrane(const SpikingNetwork& net, const DriveSchedule& schedule,
                                           const SimulationConfig& cfg,
                                           const std::vector<int>& neurons) {
    Engine engine(net, schedule, cfg);
    std::vector<MembraneTrace> traces;
    traces.reserve(neurons.size());
    for (int id : neurons) {
        if (id < 0 || id >= net.n) {
            throw ParameterError("membrane recording: neuron id " + std::to_string(id) +
                                 " out of range");
        }
        MembraneTrace trace;
        trace.neuron = id;
        traces.push_back(std::move(trace));
    }
    SpikeData out;
    engine.run(out, traces);
    return traces;
}

}  // namespace spikecom
