#include "custody/design_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace custody {
namespace {

constexpr std::string_view kLabelTag = "# label:";

std::vector<std::uint64_t> parse_integers(std::string_view text, std::size_t line_no) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    if (pos >= text.size()) break;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc() || ptr == text.data() + pos) {
      throw DesignFormatError(line_no, "expected a non-negative integer near '" + std::string(text.substr(pos, 8)) + "'");
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\r') {
      throw DesignFormatError(line_no, "unexpected character in integer list");
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

GroupAssignment read_design(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0, k = 0;
  std::vector<NodeId> flat;
  std::vector<std::string> labels;
  bool any_label = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || view[first] == '#') continue;

    std::string label;
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      std::string_view comment = view.substr(hash);
      if (comment.starts_with(kLabelTag)) {
        label = std::string(comment.substr(kLabelTag.size()));
        any_label = true;
      }
      view = view.substr(0, hash);
    }
    auto values = parse_integers(view, line_no);

    if (!have_header) {
      if (values.size() != 3) throw DesignFormatError(line_no, "header must be 'n m k'");
      n = values[0];
      m = values[1];
      k = values[2];
      if (n == 0 || n > UINT32_MAX || k == 0 || k > n || m == 0) {
        throw DesignFormatError(line_no, "header requires n >= 1, 1 <= k <= n, m >= 1");
      }
      flat.reserve(static_cast<std::size_t>(m * k));
      have_header = true;
      continue;
    }
    if (labels.size() == m) throw DesignFormatError(line_no, "more group lines than m");
    if (values.size() != k) throw DesignFormatError(line_no, "group line must list exactly k indices");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] >= n) throw DesignFormatError(line_no, "node index out of range [0, n)");
      if (i > 0 && values[i] <= values[i - 1]) {
        throw DesignFormatError(line_no, "indices must be strictly increasing");
      }
      flat.push_back(static_cast<NodeId>(values[i]));
    }
    labels.push_back(std::move(label));
  }
  if (!have_header) throw DesignFormatError(line_no, "missing 'n m k' header");
  if (labels.size() != m) throw DesignFormatError(line_no, "expected " + std::to_string(m) + " group lines");
  if (!any_label) labels.clear();
  try {
    return GroupAssignment::from_groups(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k),
                                        std::move(flat), std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw DesignFormatError(line_no, e.what());
  }
}

GroupAssignment read_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open design file: " + path);
  return read_design(in);
}

void write_design(std::ostream& out, const GroupAssignment& a, const std::vector<std::string>& header_comments) {
  for (const auto& c : header_comments) out << "# " << c << '\n';
  const std::size_t m = a.size();
  out << a.node_count() << ' ' << m << ' ' << a.group_size() << '\n';
  for (std::size_t g = 0; g < m; ++g) {
    bool first = true;
    for (NodeId v : a.group(g)) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    if (!a.label(g).empty()) out << ' ' << kLabelTag << a.label(g);
    out << '\n';
  }
}

void write_design_file(const std::string& path, const GroupAssignment& a,
                       const std::vector<std::string>& header_comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write design file: " + path);
  write_design(out, a, header_comments);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace custody
