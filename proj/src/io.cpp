#include "gaitkit/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gaitkit/errors.hpp"
#include "gaitkit/preprocess.hpp"

namespace gaitkit {

namespace {

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::string features_to_csv(const FeatureMatrix& m) {
  std::string out;
  for (const std::string& name : m.names) {
    out += name;
    out += ',';
  }
  out += "label\n";
  for (const FeatureVector& row : m.rows) {
    for (double v : row.values) {
      out += format_double(v);
      out += ',';
    }
    out += row.label;
    out += '\n';
  }
  return out;
}

FeatureMatrix features_from_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw MalformedInput("empty features CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  FeatureMatrix m;
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) m.names.push_back(cell);
    if (m.names.empty() || m.names.back() != "label") {
      throw MalformedInput("features CSV must end with a 'label' column");
    }
    m.names.pop_back();
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream row_in(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row_in, cell, ',')) cells.push_back(cell);
    if (cells.size() != m.names.size() + 1) {
      throw MalformedInput("features CSV line " + std::to_string(line_no) +
                           ": wrong cell count");
    }
    FeatureVector row;
    row.values.reserve(m.names.size());
    for (std::size_t i = 0; i < m.names.size(); ++i) {
      char* end = nullptr;
      row.values.push_back(std::strtod(cells[i].c_str(), &end));
      if (end == cells[i].c_str()) {
        throw MalformedInput("features CSV line " + std::to_string(line_no) +
                             ": bad number '" + cells[i] + "'");
      }
    }
    row.label = cells.back();
    m.rows.push_back(std::move(row));
  }
  return m;
}

nlohmann::json features_to_json(const FeatureMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json labels = nlohmann::json::array();
  nlohmann::json degenerate = nlohmann::json::array();
  for (const FeatureVector& row : m.rows) {
    rows.push_back(row.values);
    labels.push_back(row.label);
    degenerate.push_back(row.degenerate_flags);
  }

  nlohmann::json norm;
  if (m.normalization_fitted) {
    norm = nlohmann::json{{"clip_lo", m.normalization.clip_lo},
                          {"clip_hi", m.normalization.clip_hi},
                          {"min", m.normalization.min},
                          {"max", m.normalization.max}};
  } else {
    norm = nullptr;
  }

  return nlohmann::json{{"format", "gaitkit-features"}, {"version", 1},
                        {"names", m.names},             {"labels", std::move(labels)},
                        {"rows", std::move(rows)},      {"degenerate", std::move(degenerate)},
                        {"normalization_params", std::move(norm)}};
}

FeatureMatrix features_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "gaitkit-features" || j.value("version", 0) != 1) {
    throw SchemaError("not a gaitkit-features v1 document");
  }
  FeatureMatrix m;
  m.names = j.at("names").get<std::vector<std::string>>();
  const auto& rows = j.at("rows");
  const auto& labels = j.at("labels");
  if (rows.size() != labels.size()) throw SchemaError("rows/labels size mismatch");

  for (std::size_t i = 0; i < rows.size(); ++i) {
    FeatureVector row;
    row.values = rows[i].get<std::vector<double>>();
    if (row.values.size() != m.names.size()) {
      throw SchemaError("row " + std::to_string(i) + " length mismatch");
    }
    row.label = labels[i].get<std::string>();
    if (j.contains("degenerate") && i < j.at("degenerate").size()) {
      for (const auto& name : j.at("degenerate")[i]) {
        row.degenerate_flags.insert(name.get<std::string>());
      }
    }
    m.rows.push_back(std::move(row));
  }

  if (j.contains("normalization_params") && !j.at("normalization_params").is_null()) {
    const auto& n = j.at("normalization_params");
    m.normalization.names = m.names;
    m.normalization.clip_lo = n.at("clip_lo").get<std::vector<double>>();
    m.normalization.clip_hi = n.at("clip_hi").get<std::vector<double>>();
    m.normalization.min = n.at("min").get<std::vector<double>>();
    m.normalization.max = n.at("max").get<std::vector<double>>();
    m.normalization_fitted = true;
  }
  return m;
}

nlohmann::json windows_to_json(const std::vector<Window>& windows, double sample_rate_hz) {
  nlohmann::json out_windows = nlohmann::json::array();
  for (const Window& w : windows) {
    out_windows.push_back(nlohmann::json{
        {"subject", w.subject_id},
        {"session", w.session_id},
        {"index", w.window_index},
        {"ankle", nlohmann::json{{"x", w.axis(Node::Ankle, 0)},
                                 {"y", w.axis(Node::Ankle, 1)},
                                 {"z", w.axis(Node::Ankle, 2)}}},
        {"chest", nlohmann::json{{"x", w.axis(Node::Chest, 0)},
                                 {"y", w.axis(Node::Chest, 1)},
                                 {"z", w.axis(Node::Chest, 2)}}}});
  }
  return nlohmann::json{{"format", "gaitkit-windows"},
                        {"version", 1},
                        {"sample_rate_hz", sample_rate_hz},
                        {"windows", std::move(out_windows)}};
}

std::pair<std::vector<Window>, double> windows_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "gaitkit-windows" || j.value("version", 0) != 1) {
    throw SchemaError("not a gaitkit-windows v1 document");
  }
  std::vector<Window> windows;
  for (const auto& wj : j.at("windows")) {
    Window w;
    w.subject_id = wj.at("subject").get<std::string>();
    w.session_id = wj.value("session", "");
    w.window_index = wj.at("index").get<int>();
    const char* axes[3] = {"x", "y", "z"};
    for (int a = 0; a < 3; ++a) {
      w.axis(Node::Ankle, a) = wj.at("ankle").at(axes[a]).get<std::vector<double>>();
      w.axis(Node::Chest, a) = wj.at("chest").at(axes[a]).get<std::vector<double>>();
    }
    windows.push_back(std::move(w));
  }
  return {std::move(windows), j.at("sample_rate_hz").get<double>()};
}

nlohmann::json selection_to_json(const SelectionResult& r) {
  return nlohmann::json{{"format", "gaitkit-selection"},
                        {"version", 1},
                        {"selected", r.selected},
                        {"merit", r.merit},
                        {"visited", r.visited}};
}

SelectionResult selection_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "gaitkit-selection" || j.value("version", 0) != 1) {
    throw SchemaError("not a gaitkit-selection v1 document");
  }
  SelectionResult r;
  r.selected = j.at("selected").get<std::vector<std::string>>();
  r.merit = j.at("merit").get<double>();
  r.visited = j.at("visited").get<long>();
  return r;
}

std::vector<RawRecording> load_data_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("data directory '" + dir.string() + "' does not exist");
  }

  // <subject>_<session>_<node>.csv, keyed by (subject, session).
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::filesystem::path>>
      groups;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    const std::string stem = entry.path().stem().string();
    const std::size_t u2 = stem.rfind('_');
    if (u2 == std::string::npos) continue;
    const std::size_t u1 = stem.rfind('_', u2 - 1);
    if (u1 == std::string::npos) continue;
    const std::string subject = stem.substr(0, u1);
    const std::string session = stem.substr(u1 + 1, u2 - u1 - 1);
    const std::string node = stem.substr(u2 + 1);
    if (node != "ankle" && node != "chest") continue;
    groups[{subject, session}][node] = entry.path();
  }
  if (groups.empty()) {
    throw InsufficientData("no <subject>_<session>_<node>.csv files in '" +
                           dir.string() + "'");
  }

  std::vector<RawRecording> out;
  for (const auto& [key, nodes] : groups) {
    auto ankle = nodes.find("ankle");
    auto chest = nodes.find("chest");
    if (ankle == nodes.end() || chest == nodes.end()) {
      throw MalformedInput("recording " + key.first + "_" + key.second +
                           " is missing its " +
                           (ankle == nodes.end() ? "ankle" : "chest") + " file");
    }
    out.push_back(parse_recording(read_file(ankle->second), read_file(chest->second),
                                  key.first, key.second));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace gaitkit
