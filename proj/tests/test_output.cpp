#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "sylvester/output.hpp"
#include "sylvester/registry.hpp"

using namespace sylvester;

namespace {

OutputRecord sample_deterministic() {
    EvalResult r;
    r.value = 0.0978468837241688;
    r.abs_error_estimate = 3.2e-13;
    r.method = Method::quadrature;
    return OutputRecord::deterministic(Distribution::gaussian(3), r);
}

OutputRecord sample_mc() {
    return OutputRecord::monte_carlo(Distribution::beta_ball(2, 0.5), McResult::from_counts(31234, 100000, 42));
}

}  // namespace

TEST(OutputRecord, DeterministicFields) {
    const auto r = sample_deterministic();
    EXPECT_EQ(r.family, "gauss");
    EXPECT_EQ(r.d, 3);
    EXPECT_FALSE(r.beta);
    EXPECT_EQ(r.method, "quadrature");
    EXPECT_FALSE(r.stderr_);
    EXPECT_FALSE(r.trials);
}

TEST(OutputRecord, MonteCarloFields) {
    const auto r = sample_mc();
    EXPECT_EQ(r.family, "beta");
    EXPECT_EQ(*r.beta, 0.5);
    EXPECT_EQ(r.method, "montecarlo");
    EXPECT_EQ(r.value, 0.31234);
    EXPECT_EQ(*r.trials, 100000);
    EXPECT_EQ(*r.seed, 42u);
    EXPECT_FALSE(r.abs_error);
}

TEST(Json, FixedFieldOrder) {
    EXPECT_EQ(to_json_line(sample_deterministic()),
              R"({"family":"gauss","d":3,"beta":null,"method":"quadrature","value":0.0978468837241688,)"
              R"("abs_error":3.2e-13,"stderr":null,"trials":null,"seed":null})");
}

TEST(Json, RoundTrip) {
    for (const auto& r : {sample_deterministic(), sample_mc()}) EXPECT_EQ(parse_json_record(to_json_line(r)), r);
    auto exact = OutputRecord::deterministic(Distribution::beta_prime(3, 2.5),
                                             *closed_form_lookup(Distribution::beta_prime(3, 2.5)));
    EXPECT_EQ(parse_json_record(to_json_line(exact)), exact);
}

TEST(Json, NonFiniteNumbersAsStrings) {
    auto r = OutputRecord::deterministic(Distribution::beta_prime(3, 2.0), cauchy_asymptotic(3));
    const auto line = to_json_line(r);
    EXPECT_NE(line.find(R"("abs_error":"inf")"), std::string::npos) << line;
    const auto back = parse_json_record(line);
    EXPECT_TRUE(std::isinf(*back.abs_error));
    EXPECT_EQ(back, r);
    EXPECT_THROW(parse_json_record(R"({"family":"gauss","d":2,"method":"x","value":"huge"})"), std::invalid_argument);
}

TEST(Csv, HeaderAndRows) {
    EXPECT_EQ(csv_header(), "family,d,beta,method,value,abs_error,stderr,trials,seed");
    EXPECT_EQ(to_csv_row(sample_deterministic()), "gauss,3,,quadrature,0.0978468837241688,3.2e-13,,,");
    EXPECT_EQ(to_csv_row(sample_mc()), "beta,2,0.5,montecarlo,0.31234,,0.0014655501506260372,100000,42");
}

TEST(Csv, QuotesSpecialCharacters) {
    auto r = sample_deterministic();
    r.method = "a,\"b\"";
    EXPECT_EQ(to_csv_row(r).rfind("gauss,3,,\"a,\"\"b\"\"\",0.09", 0), 0u);
}

TEST(Csv, CarriesSamePayloadAsJson) {
    for (const auto& r : {sample_deterministic(), sample_mc()}) {
        const auto j = to_json(r);
        std::istringstream row(to_csv_row(r));
        std::string cell;
        std::size_t i = 0;
        while (std::getline(row, cell, ',')) {
            const auto& v = j.at(kRecordFields[i]);
            if (v.is_null())
                EXPECT_TRUE(cell.empty()) << kRecordFields[i];
            else if (v.is_string())
                EXPECT_EQ(cell, v.get<std::string>());
            else
                EXPECT_EQ(std::stod(cell), v.get<double>()) << kRecordFields[i];
            ++i;
        }
        // getline drops a trailing empty cell
        EXPECT_GE(i + 1, std::size(kRecordFields));
    }
}

TEST(RecordWriter, CsvHeaderOnce) {
    std::ostringstream out;
    RecordWriter w(out, Format::csv);
    w.write(sample_deterministic());
    w.write(sample_mc());
    const auto s = out.str();
    EXPECT_EQ(s.find("family,d"), 0u);
    EXPECT_EQ(s.find("family,d", 1), std::string::npos);
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
}

TEST(RecordWriter, JsonLines) {
    std::ostringstream out;
    RecordWriter w(out, Format::json);
    w.write(sample_deterministic());
    w.write(sample_mc());
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(parse_json_record(line), sample_deterministic());
    std::getline(in, line);
    EXPECT_EQ(parse_json_record(line), sample_mc());
}

TEST(Format, Parsing) {
    EXPECT_EQ(parse_format("json"), Format::json);
    EXPECT_EQ(parse_format("csv"), Format::csv);
    EXPECT_FALSE(parse_format("xml"));
}
