#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "custody/assignment.hpp"

namespace custody {

class DesignFormatError : public std::runtime_error {
 public:
  DesignFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text format, UTF-8 with LF newlines:
//
//   # free-form comment lines anywhere
//   n m k
//   i_1 i_2 ... i_k            # label:<text>   (optional, kept as provenance)
//
// Node indices are 0-based and strictly increasing within a line.

GroupAssignment read_design(std::istream& in);
GroupAssignment read_design_file(const std::string& path);

/// Writes `header_comments` as "# ..." lines, then the header and one line per
/// group.  Output depends only on the assignment and the comments.
void write_design(std::ostream& out, const GroupAssignment& a, const std::vector<std::string>& header_comments = {});
void write_design_file(const std::string& path, const GroupAssignment& a,
                       const std::vector<std::string>& header_comments = {});

}  // namespace custody
