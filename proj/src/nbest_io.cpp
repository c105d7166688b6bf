#include "banditrank/nbest_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace banditrank {

namespace {

constexpr std::string_view kSeparator = " ||| ";

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(kSeparator, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + kSeparator.size();
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_label(std::string_view token) {
  return token.size() > 1 && (token.back() == ':' || token.back() == '=');
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("cannot format real");
  return std::string(buf, end);
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw Error("not a number: '" + std::string(text) + "'");
  }
  return value;
}

Dataset parse_nbest(std::istream& in) {
  Dataset data;
  std::vector<Candidate> pending;
  std::size_t pending_id = 0;
  bool have_pending = false;
  bool labels_seen = false;

  auto flush = [&]() {
    data.instances.push_back(make_instance(pending_id, pending));
    pending.clear();
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 fields separated by ' ||| ', found " + std::to_string(fields.size()));
    }

    std::size_t id = 0;
    const std::string_view id_text = trim(fields[0]);
    auto [id_end, id_ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (id_ec != std::errc() || id_end != id_text.data() + id_text.size() || id_text.empty()) {
      throw ParseError(line_no, "bad sentence id '" + std::string(id_text) + "'");
    }

    Candidate cand;
    cand.tokens = split_tokens(fields[1]);

    std::vector<double> values;
    std::vector<std::string> labels;
    std::string current_label;
    bool labelled = false;
    for (const std::string& tok : split_tokens(fields[2])) {
      if (is_label(tok)) {
        current_label = tok.substr(0, tok.size() - 1);
        labelled = true;
        continue;
      }
      try {
        values.push_back(parse_real(tok));
      } catch (const Error&) {
        throw ParseError(line_no, "non-numeric feature value '" + tok + "'");
      }
      labels.push_back(current_label);
    }
    if (values.empty()) throw ParseError(line_no, "empty feature block");
    if (labelled && labels.front().empty()) throw ParseError(line_no, "feature values before the first label");
    for (double v : values) {
      if (!std::isfinite(v)) throw ParseError(line_no, "non-finite feature value");
    }
    cand.features = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
    try {
      cand.base_score = parse_real(fields[3]);
    } catch (const Error&) {
      throw ParseError(line_no, "non-numeric total score '" + std::string(trim(fields[3])) + "'");
    }
    if (!std::isfinite(cand.base_score)) throw ParseError(line_no, "non-finite total score");

    if (data.dim == 0 && !have_pending) {
      data.dim = values.size();
      labels_seen = labelled;
      if (labelled) data.feature_labels = labels;
    } else if (values.size() != data.dim) {
      throw ParseError(line_no, "feature dimension " + std::to_string(values.size()) + " differs from " +
                                    std::to_string(data.dim));
    } else if (labels_seen && labels != data.feature_labels) {
      throw ParseError(line_no, "feature labels differ from the first line");
    }

    if (have_pending && id != pending_id) {
      flush();
      if (id != pending_id + 1) {
        throw ParseError(line_no, "sentence id " + std::to_string(id) + " follows " + std::to_string(pending_id) +
                                      "; ids must be contiguous and run 0..N-1");
      }
    } else if (!have_pending && id != 0) {
      throw ParseError(line_no, "first sentence id must be 0, found " + std::to_string(id));
    }
    pending_id = id;
    have_pending = true;
    pending.push_back(std::move(cand));
  }
  if (in.bad()) throw Error("read error while parsing n-best list");
  if (!have_pending) throw Error("n-best input is empty");
  flush();
  return data;
}

void write_nbest(std::ostream& out, const Dataset& data) {
  for (const Instance& inst : data.instances) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      out << inst.id << kSeparator << join_tokens(inst.hypotheses[i]) << kSeparator;
      const auto row = inst.features.row(static_cast<Eigen::Index>(i));
      for (Eigen::Index j = 0; j < row.size(); ++j) {
        if (j) out << ' ';
        if (!data.feature_labels.empty() &&
            (j == 0 || data.feature_labels[static_cast<std::size_t>(j)] !=
                           data.feature_labels[static_cast<std::size_t>(j - 1)])) {
          out << data.feature_labels[static_cast<std::size_t>(j)] << ": ";
        }
        out << format_real(row(j));
      }
      out << kSeparator << format_real(inst.base_scores[i]) << '\n';
    }
  }
}

std::vector<Tokens> parse_references(std::istream& in) {
  std::vector<Tokens> refs;
  std::string line;
  while (std::getline(in, line)) refs.push_back(split_tokens(line));
  if (in.bad()) throw Error("read error while parsing references");
  return refs;
}

void attach_references(Dataset& data, std::vector<Tokens> references) {
  if (references.size() != data.size()) {
    throw Error("reference count " + std::to_string(references.size()) + " does not match instance count " +
                std::to_string(data.size()));
  }
  for (std::size_t i = 0; i < references.size(); ++i) data.instances[i].reference = std::move(references[i]);
}

WeightVector parse_weights(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    double v = 0.0;
    try {
      v = parse_real(text);
    } catch (const Error&) {
      throw ParseError(line_no, "bad weight '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) throw ParseError(line_no, "non-finite weight");
    values.push_back(v);
  }
  if (values.empty()) throw Error("weight file is empty");
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_weights(std::ostream& out, const WeightVector& w) {
  for (Eigen::Index i = 0; i < w.size(); ++i) out << format_real(w(i)) << '\n';
}

Dataset load_nbest(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_nbest(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<Tokens> load_references(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_references(in);
}

WeightVector load_weights(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_weights(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace banditrank
