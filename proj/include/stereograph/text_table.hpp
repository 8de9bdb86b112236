#ifndef STEREOGRAPH_TEXT_TABLE_HPP
#define STEREOGRAPH_TEXT_TABLE_HPP

#include <string>
#include <vector>

namespace stereograph {

// Aligned-column plain-text rendering for CLI table output. Columns are
// left-aligned and two spaces apart; output is deterministic.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace stereograph

#endif  // STEREOGRAPH_TEXT_TABLE_HPP
