#pragma once

#include "cdpulse/error.hpp"
#include "cdpulse/harness.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace cdpulse::detail {

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header)
      : out_(file), columns_(header.size()) {
    if (!out_) throw Error("cannot write " + file.string());
    row_.reserve(columns_);
    for (const auto& h : header) cell(h);
    end_row();
  }

  CsvWriter& cell(const std::string& s) {
    row_.push_back(s);
    return *this;
  }
  CsvWriter& cell(double v) { return cell(format_number(v)); }

  void end_row() {
    if (row_.size() != columns_) throw Error("CsvWriter: row has the wrong number of cells");
    for (std::size_t i = 0; i < row_.size(); ++i) {
      if (i) out_ << ',';
      out_ << row_[i];
    }
    out_ << '\n';
    row_.clear();
  }

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::vector<std::string> row_;
};

}  // namespace cdpulse::detail
