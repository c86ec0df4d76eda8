#include "spikecom/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "spikecom/errors.hpp"

namespace spikecom {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

// Trims trailing CR so CRLF input parses like LF input.
std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

int parse_int(std::string_view field, const char* what, std::size_t line_no) {
    int value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw DataError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                        std::string(field) + "'");
    }
    return value;
}

double parse_double(std::string_view field, const char* what, std::size_t line_no) {
    double value = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw DataError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                        std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::string spikes_to_csv(const SpikeData& spikes) {
    std::vector<std::pair<double, int>> events;
    events.reserve(static_cast<std::size_t>(spikes.total_spikes()));
    for (int i = 0; i < spikes.n; ++i) {
        for (double t : spikes.trains[i]) {
            events.emplace_back(t, i);
        }
    }
    std::sort(events.begin(), events.end());
    std::string out = "neuron,time_ms\n";
    for (const auto& [t, i] : events) {
        out += std::to_string(i);
        out += ',';
        out += format_double(t);
        out += '\n';
    }
    return out;
}

SpikeData spikes_from_csv(const std::string& text, int n, double duration_ms) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool saw_header = false;
    int max_id = -1;
    double max_time = 0.0;
    std::vector<std::vector<double>> trains;
    if (n >= 0) {
        trains.resize(n);
    }
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = chomp(raw);
        if (line.empty()) {
            continue;
        }
        if (!saw_header) {
            if (line != "neuron,time_ms") {
                throw DataError("spike CSV line 1: expected header 'neuron,time_ms'");
            }
            saw_header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw DataError("spike CSV line " + std::to_string(line_no) + ": expected two fields");
        }
        const int id = parse_int(line.substr(0, comma), "neuron id", line_no);
        const double t = parse_double(line.substr(comma + 1), "spike time", line_no);
        if (id < 0 || (n >= 0 && id >= n)) {
            throw DataError("spike CSV line " + std::to_string(line_no) + ": neuron id " +
                            std::to_string(id) + " out of range");
        }
        if (t < 0.0) {
            throw DataError("spike CSV line " + std::to_string(line_no) + ": negative spike time");
        }
        if (duration_ms >= 0.0 && t > duration_ms + 1e-9) {
            throw DataError("spike CSV line " + std::to_string(line_no) +
                            ": spike time beyond duration");
        }
        if (id >= static_cast<int>(trains.size())) {
            trains.resize(id + 1);
        }
        trains[id].push_back(t);
        max_id = std::max(max_id, id);
        max_time = std::max(max_time, t);
    }
    if (!saw_header) {
        throw DataError("spike CSV line 1: expected header 'neuron,time_ms'");
    }
    SpikeData spikes;
    spikes.n = n >= 0 ? n : max_id + 1;
    trains.resize(spikes.n);
    for (auto& train : trains) {
        std::sort(train.begin(), train.end());
    }
    spikes.trains = std::move(trains);
    spikes.duration_ms = duration_ms >= 0.0 ? duration_ms : max_time;
    validate(spikes);
    return spikes;
}

std::string matrix_to_csv(const ComparisonMatrix& matrix) {
    std::string out = "neuron";
    for (int j = 0; j < matrix.n; ++j) {
        out += ',';
        out += std::to_string(j);
    }
    out += '\n';
    for (int i = 0; i < matrix.n; ++i) {
        out += std::to_string(i);
        for (int j = 0; j < matrix.n; ++j) {
            out += ',';
            out += format_double(matrix.at(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string schedule_to_csv(const DriveSchedule& schedule) {
    std::string out = "target,t1_ms,t2_ms,a_max,beta\n";
    for (const auto& p : schedule.pulses) {
        out += std::to_string(p.target);
        out += ',';
        out += format_double(p.t1_ms);
        out += ',';
        out += format_double(p.t2_ms);
        out += ',';
        out += format_double(p.a_max);
        out += ',';
        out += format_double(p.beta);
        out += '\n';
    }
    return out;
}

std::string traces_to_csv(const std::vector<MembraneTrace>& traces) {
    std::string out = "neuron,time_ms,potential_v\n";
    for (const auto& trace : traces) {
        for (std::size_t k = 0; k < trace.time_ms.size(); ++k) {
            out += std::to_string(trace.neuron);
            out += ',';
            out += format_double(trace.time_ms[k]);
            out += ',';
            out += format_double(trace.potential_v[k]);
            out += '\n';
        }
    }
    return out;
}

std::string sweep_to_csv(const SeparabilitySweep& sweep) {
    std::string out = "bin_width_ms,source_community,target_community,mean,std\n";
    for (const auto& s : sweep.stats) {
        out += format_double(s.bin_width_ms);
        out += ',';
        out += std::to_string(s.source_community);
        out += ',';
        out += std::to_string(s.target_community);
        out += ',';
        out += format_double(s.mean);
        out += ',';
        out += format_double(s.stddev);
        out += '\n';
    }
    return out;
}

std::string bipolar_to_csv(const BipolarStateTable& table) {
    std::string out = "neuron,window_index,count,state\n";
    for (std::size_t i = 0; i < table.counts.size(); ++i) {
        for (std::size_t w = 0; w < table.windows.size(); ++w) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(w);
            out += ',';
            out += std::to_string(table.counts[i][w]);
            out += ',';
            out += std::to_string(static_cast<int>(table.states[i][w]));
            out += '\n';
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write file: " + path);
    }
    out << content;
    if (!out) {
        throw DataError("cannot write file: " + path);
    }
}

}  // namespace spikecom
