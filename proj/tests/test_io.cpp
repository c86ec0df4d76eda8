#include <cstdio>
#include <string>

#include <gtest/gtest.h>

#include "spikecom/errors.hpp"
#include "spikecom/io.hpp"

namespace spikecom {
namespace {

TEST(Io, FormatDoubleIsShortestRoundTrip) {
    EXPECT_EQ(format_double(21.0), "21");
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(-3.5), "-3.5");
    EXPECT_EQ(format_double(1001.1000000000001), "1001.1000000000001");
}

TEST(Io, SpikeCsvSortsByTimeThenNeuron) {
    SpikeData s;
    s.n = 3;
    s.duration_ms = 100.0;
    s.trains = {{50.0}, {10.0, 50.0}, {}};
    EXPECT_EQ(spikes_to_csv(s),
              "neuron,time_ms\n"
              "1,10\n"
              "0,50\n"
              "1,50\n");
}

TEST(Io, SpikeCsvRoundTrip) {
    SpikeData s;
    s.n = 4;
    s.duration_ms = 120.5;
    s.trains = {{50.0, 71.25}, {10.1}, {}, {90.0}};
    const SpikeData back = spikes_from_csv(spikes_to_csv(s), s.n, s.duration_ms);
    EXPECT_EQ(back.n, s.n);
    EXPECT_DOUBLE_EQ(back.duration_ms, s.duration_ms);
    EXPECT_EQ(back.trains, s.trains);
}

TEST(Io, SpikeCsvInfersShape) {
    const SpikeData s = spikes_from_csv("neuron,time_ms\n2,30\n0,10.5\n");
    EXPECT_EQ(s.n, 3);  // max id + 1, including the silent neuron 1
    EXPECT_DOUBLE_EQ(s.duration_ms, 30.0);
    EXPECT_TRUE(s.trains[1].empty());
    EXPECT_DOUBLE_EQ(s.trains[0][0], 10.5);
}

TEST(Io, SpikeCsvAcceptsCrlfAndBlankLines) {
    const SpikeData s = spikes_from_csv("neuron,time_ms\r\n\r\n0,5\r\n", 1, 10.0);
    ASSERT_EQ(s.trains[0].size(), 1u);
    EXPECT_DOUBLE_EQ(s.trains[0][0], 5.0);
}

TEST(Io, SpikeCsvHeaderOnlyMeansSilence) {
    const SpikeData s = spikes_from_csv("neuron,time_ms\n", 2, 50.0);
    EXPECT_EQ(s.n, 2);
    EXPECT_EQ(s.total_spikes(), 0);
}

TEST(Io, SpikeCsvRejectsMalformedInput) {
    EXPECT_THROW(spikes_from_csv(""), DataError);                       // no header
    EXPECT_THROW(spikes_from_csv("time_ms,neuron\n0,1\n"), DataError);  // wrong header
    EXPECT_THROW(spikes_from_csv("neuron,time_ms\n0\n"), DataError);    // one field
    EXPECT_THROW(spikes_from_csv("neuron,time_ms\nx,1\n"), DataError);  // bad id
    EXPECT_THROW(spikes_from_csv("neuron,time_ms\n0,abc\n"), DataError);
    EXPECT_THROW(spikes_from_csv("neuron,time_ms\n5,1\n", 2), DataError);   // id past n
    EXPECT_THROW(spikes_from_csv("neuron,time_ms\n0,-1\n"), DataError);     // negative time
    EXPECT_THROW(spikes_from_csv("neuron,time_ms\n0,99\n", 1, 50.0), DataError);
    try {
        spikes_from_csv("neuron,time_ms\n0,5\n0,bad\n");
        FAIL() << "malformed row accepted";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Io, MatrixCsvLayout) {
    ComparisonMatrix m;
    m.n = 2;
    m.values = {1.0, 0.5, 0.5, 4.0};
    EXPECT_EQ(matrix_to_csv(m),
              "neuron,0,1\n"
              "0,1,0.5\n"
              "1,0.5,4\n");
}

TEST(Io, ScheduleCsvLayout) {
    DriveSchedule s;
    s.pulses.push_back({3, 1000.0, 1200.0, 10.25, 1.0});
    EXPECT_EQ(schedule_to_csv(s),
              "target,t1_ms,t2_ms,a_max,beta\n"
              "3,1000,1200,10.25,1\n");
}

TEST(Io, TraceCsvLayout) {
    MembraneTrace tr;
    tr.neuron = 1;
    tr.time_ms = {0.0, 0.1};
    tr.potential_v = {0.0, 0.25};
    EXPECT_EQ(traces_to_csv({tr}),
              "neuron,time_ms,potential_v\n"
              "1,0,0\n"
              "1,0.1,0.25\n");
}

TEST(Io, SweepCsvLayout) {
    SeparabilitySweep sweep;
    sweep.stats.push_back({30.0, 0, 1, 0.75, 0.125});
    EXPECT_EQ(sweep_to_csv(sweep),
              "bin_width_ms,source_community,target_community,mean,std\n"
              "30,0,1,0.75,0.125\n");
}

TEST(Io, BipolarCsvLayout) {
    BipolarStateTable t;
    t.windows = {{0.0, 10.0}};
    t.counts = {{57}, {3}};
    t.states = {{1}, {-1}};
    t.f0 = 55.0;
    EXPECT_EQ(bipolar_to_csv(t),
              "neuron,window_index,count,state\n"
              "0,0,57,1\n"
              "1,0,3,-1\n");
}

TEST(Io, FileRoundTripAndErrors) {
    const std::string path = testing::TempDir() + "spikecom_io_test.txt";
    write_file(path, "payload\n");
    EXPECT_EQ(read_file(path), "payload\n");
    std::remove(path.c_str());
    EXPECT_THROW(read_file(path), DataError);
    EXPECT_THROW(write_file("/nonexistent-dir/f.txt", "x"), DataError);
}

}  // namespace
}  // namespace spikecom
