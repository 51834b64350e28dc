#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "cscp/errors.hpp"
#include "cscp/ingest.hpp"
#include "test_support.hpp"

using namespace cscp;

namespace {

ParsedTransactions parse(const std::string& text) {
  std::istringstream in(text);
  return parse_transactions(in);
}

ParsedDemographics parse_demo(const std::string& text) {
  std::istringstream in(text);
  return parse_demographics(in);
}

}  // namespace

TEST_CASE("transactions in patient,disease row format") {
  const auto parsed = parse(
      "patient_id,disease\n"
      "P000000001,Bradycardia\n"
      "P000000001,Cardiac Arrest\n"
      "P000000002,Bradycardia\n");
  CHECK(parsed.table.total_patients() == 2);
  CHECK(parsed.table.entries().at(PatientId("P000000001")).size() == 2);
  CHECK(parsed.report.rows_read == 3);
  CHECK(parsed.report.distinct_diseases == 2);
  CHECK(parsed.report.malformed_rows.empty());
}

TEST_CASE("header-only input gives an empty table") {
  const auto parsed = parse("patient_id,disease\n");
  CHECK(parsed.table.empty());
  CHECK(parsed.report.patients == 0);
}

TEST_CASE("duplicate rows collapse") {
  const auto parsed = parse("patient_id,disease\nP1,X\nP1,X\n");
  CHECK(parsed.table.entries().at(PatientId("P1")).size() == 1);
  CHECK(parsed.report.duplicate_rows_dropped == 1);
  CHECK(parsed.report.accepted_rows() == 1);
}

TEST_CASE("CRLF, BOM, quoting and malformed rows") {
  const auto parsed = parse(
      "\xEF\xBB\xBFpatient_id,disease\r\n"
      "P1,\"Heart-Block\"\r\n"
      "P1,  Hyper   tension \r\n"
      "P2,\"unterminated\r\n"
      "P3,A,B\r\n"
      "P4,\r\n"
      "P5,\"A,B\"\r\n"
      "\r\n"
      "P6,ok\r\n");
  CHECK(parsed.table.total_patients() == 2);
  const auto& p1 = parsed.table.entries().at(PatientId("P1"));
  CHECK(p1.contains(DiseaseName("Heart-Block")));
  CHECK(p1.contains(DiseaseName("Hyper tension")));
  REQUIRE(parsed.report.malformed_rows.size() == 4);
  CHECK(parsed.report.malformed_rows[0].line == 4);
  CHECK(parsed.report.malformed_rows[1].line == 5);
  CHECK(parsed.report.malformed_rows[2].line == 6);
  // A quoted comma parses, but the name itself is invalid.
  CHECK(parsed.report.malformed_rows[3].line == 7);
  const auto& r = parsed.report;
  CHECK(r.rows_read == r.accepted_rows() + r.duplicate_rows_dropped + r.malformed_rows.size());
  CHECK(r.rows_read == 7);
}

TEST_CASE("header problems are fatal") {
  CHECK_THROWS_AS(parse(""), FormatError);
  CHECK_THROWS_AS(parse("patient,disease\nP1,X\n"), FormatError);
  CHECK_THROWS_AS(parse("patient_id,disease,extra\n"), FormatError);

  std::istringstream broken;
  broken.setstate(std::ios::badbit);
  CHECK_THROWS_AS(parse_transactions(broken), IoError);
}

TEST_CASE("row permutation does not change the table") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto table = testing::random_table(rng, 8, 40);
    std::vector<std::string> rows;
    std::size_t pairs = 0;
    for (const auto& [p, ds] : table.entries()) {
      for (const auto& d : ds) {
        rows.push_back(p.str() + "," + d.str());
        ++pairs;
        if (rng() % 4 == 0) rows.push_back(p.str() + "," + d.str());
      }
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    std::string text = "patient_id,disease\n";
    for (const auto& r : rows) text += r + "\n";
    const auto parsed = parse(text);
    CHECK(parsed.table == table);

    std::size_t sum = 0;
    for (const auto& rec : count_diseases(parsed.table)) sum += rec.count;
    CHECK(sum == pairs);
  }
}

TEST_CASE("count_diseases mirrors per-patient aggregation") {
  const auto table = testing::make_table({
      {"P000000001", {"Heart-Block", "Hypertension", "Cardiac-Arrest", "Bradycardia"}},
      {"P000000002", {"Heart-Block", "Hypertension", "Cardiac-Arrest"}},
      {"P000001000", {"Hypertension"}},
  });
  const auto records = count_diseases(table);
  REQUIRE(records.size() == 3);
  CHECK(records[0].patient.str() == "P000000001");
  CHECK(records[0].count == 4);
  CHECK(records[0].diseases.front().str() == "Bradycardia");
  CHECK(std::is_sorted(records[0].diseases.begin(), records[0].diseases.end()));
  CHECK(records[1].count == 3);
  CHECK(records[2].patient.str() == "P000001000");
  CHECK(records[2].count == 1);
  CHECK(count_diseases(table) == records);
  CHECK(count_diseases(TransactionTable{}).empty());
}

TEST_CASE("demographics parsing") {
  const auto parsed = parse_demo(
      "patient_id,age,sex\n"
      "P1,47,F\n"
      "P2,,m\n"
      "P3,200,F\n"
      "P4,30,X\n"
      "P5,abc,\n"
      "P6,12,o\n"
      "P1,48,F\n");
  const auto& d = parsed.demographics;
  REQUIRE(d.size() == 3);
  CHECK(d.at(PatientId("P1")).age == 48);
  CHECK(d.at(PatientId("P1")).sex == Sex::female);
  CHECK_FALSE(d.at(PatientId("P2")).age.has_value());
  CHECK(d.at(PatientId("P2")).sex == Sex::male);
  CHECK(d.at(PatientId("P6")).sex == Sex::other);
  CHECK(parsed.report.overridden_rows == 1);
  REQUIRE(parsed.report.malformed_rows.size() == 3);
  CHECK(parsed.report.malformed_rows[0].line == 4);
  CHECK(parsed.report.rows_read == 7);
  CHECK_THROWS_AS(parse_demo("patient_id,sex,age\n"), FormatError);
}

TEST_CASE("writers produce what the parsers read") {
  const auto table = testing::make_table({{"P2", {"B", "A \"quoted\""}}, {"P1", {"C"}}});
  std::ostringstream out;
  write_transactions(out, table);
  CHECK(out.str() == "patient_id,disease\nP1,C\nP2,\"A \"\"quoted\"\"\"\nP2,B\n");
  const auto back = parse(out.str());
  CHECK(back.table == table);
  CHECK(back.report.malformed_rows.empty());

  DemographicsMap demo;
  demo.emplace(PatientId("P1"), Demographics(PatientId("P1"), 47, Sex::female));
  demo.emplace(PatientId("P2"), Demographics(PatientId("P2"), std::nullopt, std::nullopt));
  std::ostringstream dout;
  write_demographics(dout, demo);
  CHECK(dout.str() == "patient_id,age,sex\nP1,47,F\nP2,,\n");
  CHECK(parse_demo(dout.str()).demographics == demo);
}
