#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cscp/model.hpp"

namespace cscp {

struct MalformedRow {
  std::size_t line;  // 1-based, header is line 1
  std::string reason;

  friend bool operator==(const MalformedRow&, const MalformedRow&) = default;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t duplicate_rows_dropped = 0;
  std::size_t patients = 0;
  std::size_t distinct_diseases = 0;
  std::vector<MalformedRow> malformed_rows;

  [[nodiscard]] std::size_t accepted_rows() const noexcept {
    return rows_read - duplicate_rows_dropped - malformed_rows.size();
  }
};

struct ParsedTransactions {
  TransactionTable table;
  IngestReport report;
};

/// Reads the `patient_id,disease` CSV. Malformed rows are skipped and
/// recorded; duplicate (patient, disease) rows collapse into one membership.
/// Throws FormatError on a missing or wrong header and IoError on a failed
/// stream.
ParsedTransactions parse_transactions(std::istream& in);

struct DemographicsReport {
  std::size_t rows_read = 0;
  std::size_t overridden_rows = 0;  // earlier rows replaced by a later row for the same patient
  std::vector<MalformedRow> malformed_rows;
};

struct ParsedDemographics {
  DemographicsMap demographics;
  DemographicsReport report;
};

/// Reads the `patient_id,age,sex` CSV. Age is empty or an integer in
/// [0, 150]; sex is F, M, O (any case) or empty.
ParsedDemographics parse_demographics(std::istream& in);

/// One record per patient, ordered by patient id, diseases ascending.
std::vector<PatientRecord> count_diseases(const TransactionTable& table);

/// Writes the table in the format parse_transactions reads, rows sorted by
/// (patient, disease).
void write_transactions(std::ostream& out, const TransactionTable& table);

void write_demographics(std::ostream& out, const DemographicsMap& demographics);

}  // namespace cscp
