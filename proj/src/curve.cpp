#include "banditrank/curve.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "banditrank/nbest_io.hpp"

namespace banditrank {

void write_curve(std::ostream& out, std::vector<CurveRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const CurveRecord& a, const CurveRecord& b) {
    return a.run_seed != b.run_seed ? a.run_seed < b.run_seed : a.iteration < b.iteration;
  });
  out << kCurveHeader << '\n';
  for (const CurveRecord& r : records) {
    out << r.run_seed << ',' << r.iteration << ',' << r.epoch << ',' << format_real(r.cumulative_loss) << ','
        << format_real(r.test_corpus_bleu) << '\n';
  }
}

namespace {

template <typename Int>
Int parse_field(std::string_view text, std::size_t line_no) {
  Int value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw ParseError(line_no, "bad integer field '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<CurveRecord> read_curve(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCurveHeader) throw ParseError(1, "missing curve header");
  std::vector<CurveRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      fields.push_back(rest.substr(0, pos));
    }
    fields.push_back(rest);
    if (fields.size() != 5) throw ParseError(line_no, "expected 5 comma-separated fields");
    CurveRecord r;
    r.run_seed = parse_field<std::uint64_t>(fields[0], line_no);
    r.iteration = parse_field<std::size_t>(fields[1], line_no);
    r.epoch = parse_field<std::size_t>(fields[2], line_no);
    try {
      r.cumulative_loss = parse_real(fields[3]);
      r.test_corpus_bleu = parse_real(fields[4]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace banditrank
