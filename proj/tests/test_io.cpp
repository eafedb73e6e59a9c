#include <sstream>

#include <gtest/gtest.h>

#include "tplab/io.hpp"

using namespace tplab;

TEST(Csv, QuotingFollowsRfc4180) {
    EXPECT_EQ(io::csv_field("plain"), "plain");
    EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(io::csv_field("two\nlines"), "\"two\nlines\"");
    std::ostringstream os;
    io::CsvWriter w(os);
    w.header({"t", "value"});
    w.row(std::vector<double>{0.1, 2.5});
    EXPECT_EQ(os.str(), "t,value\r\n0.1,2.5\r\n");
}

TEST(Csv, NumbersRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
        EXPECT_EQ(std::stod(io::format_number(x)), x);
    }
    EXPECT_EQ(io::format_number(0.01), "0.01");
}

TEST(Paths, JsonLinesRoundTrip) {
    GaussianPath p;
    p.grid = {0.0, 0.25, 3};
    p.values = {0.0, 0.1, -1.0 / 3.0};
    p.process = ProcessDescriptor::mixed(io::parse_mixture("1:0.8:1;2:1.2:0.25"));
    p.seed = 18446744073709551615ull;
    p.master_seed = 42;
    p.path_index = 7;
    p.warnings = {"note"};
    std::stringstream ss;
    io::write_paths(ss, {p, p});
    auto back = io::read_paths(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].values, p.values);
    EXPECT_EQ(back[0].seed, p.seed);
    EXPECT_EQ(back[0].path_index, 7u);
    EXPECT_EQ(back[0].process.family, Family::mixed);
    EXPECT_EQ(back[0].process.mixture.components[1].weight, 2.0);
    EXPECT_EQ(back[0].warnings, p.warnings);
}

TEST(Paths, DescriptorsRoundTrip) {
    std::vector<ProcessDescriptor> ds{
        ProcessDescriptor::fou({0.8, 1.5}), ProcessDescriptor::tfbm2({0.9, 0.6, 2.0}),
        ProcessDescriptor::tfgn({1.7, 0.3}), ProcessDescriptor::tmbm(HurstProfile::parse("ramp:0.7,1.1,0,4"), 0.5)};
    for (const auto& d : ds) {
        auto back = io::descriptor_from_json(io::descriptor_to_json(d));
        EXPECT_EQ(io::descriptor_to_json(back), io::descriptor_to_json(d));
    }
}

TEST(Paths, MinimalRecordAccepted) {
    std::istringstream in(R"({"seed":1,"t0":0,"dt":0.1,"values":[0,1,2],"method":"cholesky","family":"tfbm"})");
    auto p = io::read_paths(in);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0].grid.n, 3u);
}

TEST(Paths, SchemaErrorsNameTheLine) {
    auto message = [](const std::string& text) {
        std::istringstream in(text);
        try {
            io::read_paths(in);
        } catch (const DomainError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    const std::string good = R"({"seed":1,"t0":0,"dt":0.1,"values":[0,1],"method":"cholesky","family":"tfbm"})";
    EXPECT_NE(message(good + "\n\n{oops").find("line 3"), std::string::npos);
    EXPECT_NE(message(good + "\n" + R"({"seed":1,"t0":0,"values":[0],"method":"cholesky","family":"tfbm"})")
                  .find("line 2: missing field 'dt'"),
              std::string::npos);
    EXPECT_NE(message(R"({"seed":"x","t0":0,"dt":0.1,"values":[0],"method":"cholesky","family":"tfbm"})")
                  .find("line 1"),
              std::string::npos);
    EXPECT_NE(message(R"({"seed":1,"t0":0,"dt":0.1,"values":[0],"method":"magic","family":"tfbm"})")
                  .find("unknown method"),
              std::string::npos);
    EXPECT_NE(message(R"({"seed":1,"t0":0,"dt":0.1,"n":5,"values":[0],"method":"cholesky","family":"tfbm"})")
                  .find("'n'"),
              std::string::npos);
}

TEST(Mixture, ParseErrors) {
    EXPECT_THROW(io::parse_mixture("1:0.8"), DomainError);
    EXPECT_THROW(io::parse_mixture("a:b:c"), DomainError);
    EXPECT_THROW(io::parse_mixture("1:0.8:1;1:0.8:2"), DomainError);
    EXPECT_EQ(io::mixture_to_string(io::parse_mixture("1:0.8:1;0.5:1.2:0.25")), "1:0.8:1;0.5:1.2:0.25");
}

TEST(Config, KeyValueFormat) {
    std::istringstream in("# comment\nalpha = 0.9\n\nprocess=fou  # trailing\n  seed =7\n");
    auto kv = io::parse_config(in);
    EXPECT_EQ(kv.at("alpha"), "0.9");
    EXPECT_EQ(kv.at("process"), "fou");
    EXPECT_EQ(kv.at("seed"), "7");
    std::istringstream bad("alpha 0.9\n");
    EXPECT_THROW(io::parse_config(bad, "cfg"), DomainError);
    std::istringstream empty_key("=3\n");
    EXPECT_THROW(io::parse_config(empty_key), DomainError);
}
