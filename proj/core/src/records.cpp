#include "bnlf/records.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <set>

#include "bnlf/error.hpp"

namespace bnlf {

using nlohmann::json;

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

constexpr double kProbsTolerance = 1e-6;

// Thrown inside the per-line parser; converted to an Issue by the caller.
struct LineProblem {
  IssueKind kind;
  std::string message;
};

std::string label_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw LineProblem{IssueKind::MalformedLine, "label must be a string or integer"};
}

Sentiment map_label(const json& j, const LabelMap& labels, const std::string& where) {
  const std::string text = label_text(j);
  if (auto s = labels.lookup(text)) return *s;
  throw LineProblem{IssueKind::UnknownSourceLabel, where + ": unknown label '" + text + "'"};
}

Probs read_probs(const json& j, const std::string& model) {
  if (!j.is_array() || j.size() != kSentimentCount)
    throw LineProblem{IssueKind::MalformedLine, model + ".probs must be an array of 3 numbers"};
  Probs p{};
  double sum = 0.0;
  for (std::size_t i = 0; i < kSentimentCount; ++i) {
    if (!j[i].is_number()) throw LineProblem{IssueKind::MalformedLine, model + ".probs must be numeric"};
    p[i] = j[i].get<double>();
    if (!std::isfinite(p[i]) || p[i] < 0.0)
      throw LineProblem{IssueKind::InvalidProbabilities, model + ".probs has a negative or non-finite entry"};
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > kProbsTolerance)
    throw LineProblem{IssueKind::InvalidProbabilities, model + ".probs does not sum to 1"};
  return p;
}

std::size_t first_max(const Probs& p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] > p[best]) best = i;
  return best;
}

// Parses one record object. Warnings are appended to `warnings`.
PredictionRecord parse_object(const json& obj, const LabelMap& labels, std::vector<LineProblem>& warnings) {
  if (!obj.is_object()) throw LineProblem{IssueKind::MalformedLine, "line is not a JSON object"};

  PredictionRecord r;
  const auto id = obj.find("id");
  if (id == obj.end()) throw LineProblem{IssueKind::MalformedLine, "missing 'id'"};
  if (id->is_string()) r.id = id->get<std::string>();
  else if (id->is_number_integer()) r.id = std::to_string(id->get<long long>());
  else throw LineProblem{IssueKind::MalformedLine, "'id' must be a string"};
  if (r.id.empty()) throw LineProblem{IssueKind::MalformedLine, "empty 'id'"};

  const auto corpus = obj.find("corpus");
  if (corpus == obj.end() || !corpus->is_string() || corpus->get<std::string>().empty())
    throw LineProblem{IssueKind::MalformedLine, "missing or invalid 'corpus'"};
  r.corpus = corpus->get<std::string>();

  if (const auto text = obj.find("text"); text != obj.end()) {
    if (text->is_null()) throw LineProblem{IssueKind::EmptyText, "text is null"};
    if (!text->is_string()) throw LineProblem{IssueKind::MalformedLine, "'text' must be a string"};
    if (blank(text->get_ref<const std::string&>())) throw LineProblem{IssueKind::EmptyText, "text is empty"};
    r.text = text->get<std::string>();
  }

  const auto gold = obj.find("gold");
  if (gold == obj.end()) throw LineProblem{IssueKind::MalformedLine, "missing 'gold'"};
  r.gold = map_label(*gold, labels, "gold");

  if (const auto preds = obj.find("preds"); preds != obj.end()) {
    if (!preds->is_object()) throw LineProblem{IssueKind::MalformedLine, "'preds' must be an object"};
    for (const auto& [model, pred] : preds->items()) {
      if (!pred.is_object()) throw LineProblem{IssueKind::MalformedLine, "preds." + model + " must be an object"};
      ModelPrediction mp;
      if (const auto probs = pred.find("probs"); probs != pred.end() && !probs->is_null())
        mp.probs = read_probs(*probs, model);
      if (const auto label = pred.find("label"); label != pred.end()) {
        mp.label = map_label(*label, labels, "preds." + model);
      } else if (mp.probs) {
        mp.label = sentiment_at(first_max(*mp.probs));
      } else {
        throw LineProblem{IssueKind::MalformedLine, "preds." + model + " has neither label nor probs"};
      }
      if (mp.probs && (*mp.probs)[index(mp.label)] < (*mp.probs)[first_max(*mp.probs)])
        warnings.push_back({IssueKind::LabelProbabilityMismatch,
                            "preds." + model + ".label is not the argmax of its probs"});
      r.preds.emplace(model, mp);
    }
  }

  if (!is_known_corpus(r.corpus))
    warnings.push_back({IssueKind::UnknownCorpus, "unrecognized corpus tag '" + r.corpus + "'"});
  return r;
}

class RecordCollector {
 public:
  explicit RecordCollector(const LabelMap& labels) : labels_(labels) {}

  void add(std::size_t line, const json& obj) {
    std::vector<LineProblem> warnings;
    std::string id_hint;
    if (obj.is_object() && obj.contains("id") && obj["id"].is_string()) id_hint = obj["id"].get<std::string>();
    try {
      PredictionRecord r = parse_object(obj, labels_, warnings);
      if (!ids_.insert(r.id).second) {
        result_.issues.push_back({IssueKind::DuplicateId, line, r.id, "id already seen; line dropped", true});
        return;
      }
      for (auto& w : warnings) result_.issues.push_back({w.kind, line, r.id, std::move(w.message), false});
      result_.records.push_back(std::move(r));
    } catch (const LineProblem& p) {
      result_.issues.push_back({p.kind, line, id_hint, p.message, true});
    } catch (const json::exception& e) {
      result_.issues.push_back({IssueKind::MalformedLine, line, id_hint, e.what(), true});
    }
  }

  void malformed(std::size_t line, std::string message) {
    result_.issues.push_back({IssueKind::MalformedLine, line, {}, std::move(message), true});
  }

  ParseResult take() { return std::move(result_); }

 private:
  const LabelMap& labels_;
  std::set<std::string> ids_;
  ParseResult result_;
};

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < data.size() && data[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

LabelMap LabelMap::standard() {
  LabelMap m;
  for (auto s : kSentiments) {
    m.add(to_string(s), s);
    m.add(std::to_string(index(s)), s);
  }
  m.add("bearish", Sentiment::Negative);
  m.add("bullish", Sentiment::Positive);
  return m;
}

LabelMap& LabelMap::add(std::string_view source, Sentiment target) {
  map_.insert_or_assign(lowercase(source), target);
  return *this;
}

std::optional<Sentiment> LabelMap::lookup(std::string_view source) const {
  auto it = map_.find(lowercase(source));
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

std::size_t ParseResult::dropped() const {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [](const Issue& i) { return i.dropped; }));
}

std::size_t ParseResult::count(IssueKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(), [kind](const Issue& i) { return i.kind == kind; }));
}

ParseResult parse_records(std::istream& in, const LabelMap& labels) {
  RecordCollector collector(labels);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      collector.malformed(line_no, e.what());
      continue;
    }
    collector.add(line_no, obj);
  }
  return collector.take();
}

ParseResult parse_records_csv(std::istream& in, const LabelMap& labels) {
  RecordCollector collector(labels);
  const auto rows = read_csv(in);
  if (rows.empty()) return collector.take();

  const auto& header = rows.front();
  static const std::set<std::string> fixed{"id", "corpus", "text", "gold"};
  std::vector<std::string> models;
  for (const auto& h : header)
    if (!fixed.count(h) && h.find('.') == std::string::npos) models.push_back(h);

  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t line = r + 1;
    if (row.size() != header.size()) {
      collector.malformed(line, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(row.size()));
      continue;
    }
    json obj = json::object();
    for (const char* key : {"id", "corpus", "text", "gold"})
      if (auto c = column(key)) obj[key] = row[*c];
    json preds = json::object();
    for (const auto& m : models) {
      const std::string& label = row[*column(m)];
      if (label.empty()) continue;
      json pred = {{"label", label}};
      json probs = json::array();
      for (auto s : kSentiments) {
        auto c = column(m + "." + std::string(to_string(s)));
        if (!c || row[*c].empty()) break;
        try {
          probs.push_back(std::stod(row[*c]));
        } catch (const std::exception&) {
          probs.push_back(row[*c]);
        }
      }
      if (!probs.empty()) pred["probs"] = std::move(probs);
      preds[m] = std::move(pred);
    }
    obj["preds"] = std::move(preds);
    collector.add(line, obj);
  }
  return collector.take();
}

ParseResult load_records(const std::filesystem::path& path, const LabelMap& labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  if (lowercase(path.extension().string()) == ".csv") return parse_records_csv(in, labels);
  return parse_records(in, labels);
}

json record_to_json(const PredictionRecord& r) {
  json j = {{"id", r.id}, {"corpus", r.corpus}};
  if (r.text) j["text"] = *r.text;
  j["gold"] = to_string(r.gold);
  json preds = json::object();
  for (const auto& [model, p] : r.preds) {
    json pj = {{"label", to_string(p.label)}};
    if (p.probs) pj["probs"] = *p.probs;
    preds[model] = std::move(pj);
  }
  j["preds"] = std::move(preds);
  return j;
}

std::string records_to_jsonl(std::span<const PredictionRecord> records) {
  std::string out;
  for (const auto& r : records) out += record_to_json(r).dump() + "\n";
  return out;
}

}  // namespace bnlf
