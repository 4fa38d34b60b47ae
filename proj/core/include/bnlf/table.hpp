#pragma once

#include <string>
#include <vector>

namespace bnlf {

/// Small rectangular table rendered either as aligned text columns or CSV.
/// The first column is left-aligned, the rest right-aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string to_text() const;
  std::string to_csv() const;

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Fixed-point with four decimals, the precision used in every printed table.
std::string fixed4(double v);

}  // namespace bnlf
