#pragma once

#include <string>
#include <vector>

#include "spikecom/decode.hpp"
#include "spikecom/simulator.hpp"
#include "spikecom/stimulus.hpp"

namespace spikecom {

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

// "neuron,time_ms" rows sorted by time, then neuron.
std::string spikes_to_csv(const SpikeData& spikes);

// Inverse of spikes_to_csv. Negative n or duration means infer them from the
// content (max id + 1, last spike time). Malformed rows throw DataError with
// the line number.
SpikeData spikes_from_csv(const std::string& text, int n = -1, double duration_ms = -1.0);

// Dense matrix with a header row and leading column of neuron ids.
std::string matrix_to_csv(const ComparisonMatrix& matrix);

std::string schedule_to_csv(const DriveSchedule& schedule);

std::string traces_to_csv(const std::vector<MembraneTrace>& traces);

std::string sweep_to_csv(const SeparabilitySweep& sweep);

std::string bipolar_to_csv(const BipolarStateTable& table);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace spikecom
