#include "cscp/ingest.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>

#include "cscp/csv.hpp"
#include "cscp/errors.hpp"

namespace cscp {

namespace {

constexpr std::string_view kUtf8Bom = "\xEF\xBB\xBF";

void check_stream(const std::istream& in) {
  if (in.bad()) throw IoError("failed reading input stream");
}

// Reads and checks the header row; the returned line number is 1.
void expect_header(std::istream& in, const std::vector<std::string>& expected) {
  if (!in.good()) throw IoError("input stream is not readable");
  std::string line;
  if (!csv::read_line(in, line)) {
    check_stream(in);
    throw FormatError("missing header line");
  }
  if (line.starts_with(kUtf8Bom)) line.erase(0, kUtf8Bom.size());
  const auto fields = csv::split_line(line);
  if (!fields || *fields != expected) {
    std::string want;
    for (const auto& f : expected) want += (want.empty() ? "" : ",") + f;
    throw FormatError("header mismatch: expected '" + want + "', got '" + line + "'");
  }
}

std::optional<Sex> parse_sex(const std::string& token) {
  if (token.empty()) return std::nullopt;
  if (token.size() == 1) {
    switch (token[0]) {
      case 'F':
      case 'f':
        return Sex::female;
      case 'M':
      case 'm':
        return Sex::male;
      case 'O':
      case 'o':
        return Sex::other;
      default:
        break;
    }
  }
  throw ValidationError("unrecognized sex token '" + token + "'");
}

std::optional<int> parse_age(const std::string& token) {
  if (token.empty()) return std::nullopt;
  int age = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), age);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ValidationError("age '" + token + "' is not an integer");
  }
  return age;
}

char sex_token(std::optional<Sex> sex) {
  if (!sex) return '\0';
  switch (*sex) {
    case Sex::female:
      return 'F';
    case Sex::male:
      return 'M';
    case Sex::other:
      return 'O';
  }
  return '\0';
}

}  // namespace

ParsedTransactions parse_transactions(std::istream& in) {
  expect_header(in, {"patient_id", "disease"});

  IngestReport report;
  TransactionTable::Entries entries;
  std::string line;
  std::size_t line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++report.rows_read;
    const auto fields = csv::split_line(line);
    if (!fields) {
      report.malformed_rows.push_back({line_no, "unbalanced quotes"});
      continue;
    }
    if (fields->size() != 2) {
      report.malformed_rows.push_back({line_no, "expected 2 fields, got " + std::to_string(fields->size())});
      continue;
    }
    try {
      PatientId patient((*fields)[0]);
      DiseaseName disease((*fields)[1]);
      if (!entries[std::move(patient)].insert(std::move(disease)).second) ++report.duplicate_rows_dropped;
    } catch (const ValidationError& e) {
      report.malformed_rows.push_back({line_no, e.what()});
    }
  }
  check_stream(in);

  ParsedTransactions parsed{TransactionTable(std::move(entries)), std::move(report)};
  parsed.report.patients = parsed.table.total_patients();
  parsed.report.distinct_diseases = parsed.table.disease_universe().size();
  return parsed;
}

ParsedDemographics parse_demographics(std::istream& in) {
  expect_header(in, {"patient_id", "age", "sex"});

  ParsedDemographics parsed;
  auto& report = parsed.report;
  std::string line;
  std::size_t line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++report.rows_read;
    const auto fields = csv::split_line(line);
    if (!fields) {
      report.malformed_rows.push_back({line_no, "unbalanced quotes"});
      continue;
    }
    if (fields->size() != 3) {
      report.malformed_rows.push_back({line_no, "expected 3 fields, got " + std::to_string(fields->size())});
      continue;
    }
    try {
      Demographics row{PatientId{(*fields)[0]}, parse_age((*fields)[1]), parse_sex((*fields)[2])};
      auto [it, inserted] = parsed.demographics.try_emplace(row.patient, row);
      if (!inserted) {
        it->second = std::move(row);
        ++report.overridden_rows;
      }
    } catch (const ValidationError& e) {
      report.malformed_rows.push_back({line_no, e.what()});
    }
  }
  check_stream(in);
  return parsed;
}

std::vector<PatientRecord> count_diseases(const TransactionTable& table) {
  std::vector<PatientRecord> records;
  records.reserve(table.total_patients());
  for (const auto& [patient, diseases] : table.entries()) {
    records.push_back({patient, diseases.size(), {diseases.begin(), diseases.end()}});
  }
  return records;
}

void write_transactions(std::ostream& out, const TransactionTable& table) {
  out << "patient_id,disease\n";
  for (const auto& [patient, diseases] : table.entries()) {
    for (const auto& disease : diseases) {
      const std::string row[] = {patient.str(), disease.str()};
      csv::write_row(out, row);
    }
  }
}

void write_demographics(std::ostream& out, const DemographicsMap& demographics) {
  out << "patient_id,age,sex\n";
  for (const auto& [patient, d] : demographics) {
    const char sex = sex_token(d.sex);
    const std::string row[] = {patient.str(), d.age ? std::to_string(*d.age) : std::string(),
                               sex ? std::string(1, sex) : std::string()};
    csv::write_row(out, row);
  }
}

}  // namespace cscp
