#ifndef BANDITRANK_NBEST_IO_HPP_
#define BANDITRANK_NBEST_IO_HPP_

// N-best list, reference and weight file formats.
//
// N-best line:   id ||| tok tok ... ||| f1 f2 ... fd ||| total
// The feature block may instead use labelled groups ("tm: 0.1 0.2 lm: -3"),
// which are flattened in declared order. Lines of one id must be contiguous
// and ids must run 0, 1, ..., N-1.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "banditrank/types.hpp"

namespace banditrank {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Dataset parse_nbest(std::istream& in);
void write_nbest(std::ostream& out, const Dataset& data);

/// One whitespace-tokenized reference per line.
std::vector<Tokens> parse_references(std::istream& in);
/// Pairs line i with instance i; the counts must agree.
void attach_references(Dataset& data, std::vector<Tokens> references);

/// Plain text, one real per line.
WeightVector parse_weights(std::istream& in);
void write_weights(std::ostream& out, const WeightVector& w);

Dataset load_nbest(const std::filesystem::path& path);
std::vector<Tokens> load_references(const std::filesystem::path& path);
WeightVector load_weights(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);
/// Parses the whole of `text` as a real; throws on trailing garbage.
double parse_real(std::string_view text);

}  // namespace banditrank

#endif  // BANDITRANK_NBEST_IO_HPP_
