#ifndef STEREOGRAPH_ERRORS_HPP
#define STEREOGRAPH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stereograph {

// Base class for every error raised by the toolkit. Subclasses carry the
// structured fields callers need to react programmatically; what() always
// holds a one-line human-readable reason.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingFieldError : Error {
  explicit MissingFieldError(std::string field_path)
      : Error("missing required field: " + field_path), field(std::move(field_path)) {}
  std::string field;
};

struct InvalidRangeError : Error {
  InvalidRangeError(std::string field_path, const std::string& detail)
      : Error("invalid value for " + field_path + ": " + detail), field(std::move(field_path)) {}
  std::string field;
};

struct SpecParseError : Error {
  SpecParseError(std::size_t line_no, const std::string& message)
      : Error("mapping spec parse error at line " + std::to_string(line_no) + ": " + message),
        line(line_no) {}
  std::size_t line;
};

struct SpecIncompleteError : Error {
  explicit SpecIncompleteError(std::vector<std::string> missing_paths)
      : Error(render(missing_paths)), missing(std::move(missing_paths)) {}
  std::vector<std::string> missing;

 private:
  static std::string render(const std::vector<std::string>& paths) {
    std::string msg = "mapping spec leaves required fields uncovered:";
    for (const auto& p : paths) msg += " " + p;
    return msg;
  }
};

struct MissingColumnError : Error {
  explicit MissingColumnError(std::string column_name)
      : Error("row is missing column: " + column_name), column(std::move(column_name)) {}
  std::string column;
};

struct SinkUnavailableError : Error {
  using Error::Error;
};

struct UnknownIndexError : Error {
  explicit UnknownIndexError(std::string index_name)
      : Error("unknown index: " + index_name), index(std::move(index_name)) {}
  std::string index;
};

struct UnsupportedVersionError : Error {
  explicit UnsupportedVersionError(int found_version)
      : Error("unsupported snapshot format version " + std::to_string(found_version)),
        version(found_version) {}
  int version;
};

struct CorruptSnapshotError : Error {
  CorruptSnapshotError(std::size_t line_no, const std::string& detail)
      : Error("corrupt snapshot at line " + std::to_string(line_no) + ": " + detail),
        line(line_no) {}
  std::size_t line;
};

// Query DSL errors. offset is the 1-based byte position of the first
// character the parser could not accept (input length + 1 at end of input).
struct QuerySyntaxError : Error {
  QuerySyntaxError(std::size_t byte_offset, std::string expected_what)
      : Error("syntax error at offset " + std::to_string(byte_offset) + ": expected " +
              expected_what),
        offset(byte_offset), expected(std::move(expected_what)) {}
  std::size_t offset;
  std::string expected;
};

struct UnknownFieldError : Error {
  explicit UnknownFieldError(std::string field_path)
      : Error("unknown field path: " + field_path), path(std::move(field_path)) {}
  std::string path;
};

struct TypeMismatchError : Error {
  TypeMismatchError(std::string field_path, const std::string& op_text)
      : Error("operator " + op_text + " is not applicable to " + field_path),
        path(std::move(field_path)), op(op_text) {}
  std::string path;
  std::string op;
};

struct UnknownCategoryError : Error {
  explicit UnknownCategoryError(std::string category_name)
      : Error("unknown category: " + category_name), category(std::move(category_name)) {}
  std::string category;
};

struct UnknownTargetError : Error {
  explicit UnknownTargetError(std::string key)
      : Error("unknown target: " + key), target_key(std::move(key)) {}
  std::string target_key;
};

struct DanglingAssertionError : Error {
  explicit DanglingAssertionError(std::string assertion_id)
      : Error("hit references assertion absent from store: " + assertion_id),
        id(std::move(assertion_id)) {}
  std::string id;
};

}  // namespace stereograph

#endif  // STEREOGRAPH_ERRORS_HPP
