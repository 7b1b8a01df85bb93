#include "exchkit/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace exchkit {

InstanceFile to_instance_file(const Instance& instance) {
  InstanceFile file;
  file.c = instance.c;
  file.n = instance.n;
  for (const auto& w : instance.lambda.entries()) file.lambda.push_back(w.values());
  file.g = instance.g.values();
  file.seed = instance.seed;
  return file;
}

Instance to_instance(const InstanceFile& file) {
  WeightProfile lambda = WeightProfile::from_rows(file.lambda);
  if (lambda.n() != file.n || lambda.c() != file.c) {
    throw InputError("instance: lambda must hold n rows of c entries");
  }
  SymmetricKernel g(file.c, file.n, file.g);
  return make_instance(std::move(lambda), std::move(g), file.seed.value_or(0));
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string serialize_instance(const InstanceFile& file) {
  std::ostringstream os;
  os << "{\n  \"format_version\": \"1\",\n  \"c\": " << file.c << ",\n  \"n\": " << file.n << ",\n";
  if (file.seed) os << "  \"seed\": " << *file.seed << ",\n";
  os << "  \"lambda\": [";
  for (std::size_t i = 0; i < file.lambda.size(); ++i) {
    os << (i ? ", " : "") << '[';
    for (std::size_t j = 0; j < file.lambda[i].size(); ++j) {
      os << (j ? ", " : "") << format_double(file.lambda[i][j]);
    }
    os << ']';
  }
  os << "],\n  \"g\": [";
  for (std::size_t i = 0; i < file.g.size(); ++i) os << (i ? ", " : "") << format_double(file.g[i]);
  os << "]\n}\n";
  return os.str();
}

InstanceFile parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("instance file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw InputError("instance file must hold a JSON object");
    if (doc.contains("format_version") && doc.at("format_version").get<std::string>() != "1") {
      throw InputError("unsupported instance format_version");
    }
    InstanceFile file;
    file.c = doc.at("c").get<int>();
    file.n = doc.at("n").get<int>();
    if (file.c < 1 || file.n < 1) throw InputError("instance: c and n must be positive");
    file.lambda = doc.at("lambda").get<std::vector<std::vector<double>>>();
    file.g = doc.at("g").get<std::vector<double>>();
    if (doc.contains("seed")) file.seed = doc.at("seed").get<std::uint64_t>();
    if (static_cast<int>(file.lambda.size()) != file.n) throw InputError("instance: lambda needs n rows");
    for (const auto& row : file.lambda) {
      if (static_cast<int>(row.size()) != file.c) throw InputError("instance: lambda rows need c entries");
    }
    if (file.g.size() != cell_count(file.c, file.n)) throw InputError("instance: g needs c^n entries");
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("instance file has a missing or mistyped field: ") + e.what());
  }
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
  if (!out) throw InputError("failed writing file: " + path);
}

void write_report_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << kReportCsvHeader << "\r\n";
  for (const auto& r : reports) {
    out << r.seed << ',' << r.c << ',' << r.n << ',' << r.k << ',' << format_double(r.tv_exact) << ','
        << format_double(r.bound_general) << ',' << format_double(r.bound_finite) << ','
        << format_double(r.prod_r_k) << ',' << format_double(r.prod_r_n) << ','
        << (r.pass_general ? "true" : "false") << ',' << (r.pass_finite ? "true" : "false") << "\r\n";
  }
}

}  // namespace exchkit
