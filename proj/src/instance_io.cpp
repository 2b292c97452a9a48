#include "mmirp/instance_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "mmirp/error.hpp"

namespace mmirp {

std::string format_real(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

void write_instance(std::ostream& os, const Instance& inst) {
  const std::size_t n_p = inst.num_products();
  os << "MMIRP-INSTANCE 1\n";
  os << "customers " << inst.num_customers() << "\n";
  os << "periods " << inst.periods << "\n";
  os << "vehicles " << inst.num_vehicles() << "\n";
  os << "products " << n_p << "\n";
  os << "grid " << format_real(inst.grid_size) << "\n";
  os << "seed " << inst.seed << "\n";
  os << "supplier " << format_real(inst.supplier_location.x) << " " << format_real(inst.supplier_location.y) << "\n";

  os << "PRODUCTS\n";
  for (std::size_t p = 0; p < n_p; ++p) os << p + 1 << " " << format_real(inst.products[p].weight) << "\n";

  os << "VEHICLES\n";
  for (std::size_t v = 0; v < inst.num_vehicles(); ++v) {
    const auto& veh = inst.vehicles[v];
    os << v + 1 << " " << format_real(veh.capacity);
    for (double f : veh.fixed_cost) os << " " << format_real(f);
    os << "\n";
  }

  os << "CUSTOMERS\n";
  for (std::size_t i = 0; i < inst.num_customers(); ++i) {
    const auto& c = inst.customers[i];
    os << i + 1 << " " << format_real(c.location.x) << " " << format_real(c.location.y) << " "
       << format_real(c.storage_capacity);
    for (double h : c.holding_cost) os << " " << format_real(h);
    os << "\n";
  }

  os << "DEMAND\n";
  for (std::size_t i = 0; i < inst.num_customers(); ++i) {
    for (std::size_t t = 0; t < inst.periods; ++t) {
      os << i + 1 << " " << t + 1;
      for (std::size_t p = 0; p < n_p; ++p) os << " " << format_real(inst.demand(p, i, t));
      os << "\n";
    }
  }
  os << "END\n";
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_instance(os, instance);
  if (!os) throw Error("failed writing '" + path.string() + "'");
}

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& is) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(is, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

bool is_section_name(const Line& line) {
  if (line.tokens.size() != 1) return false;
  const auto& t = line.tokens[0];
  return std::all_of(t.begin(), t.end(), [](unsigned char ch) { return std::isupper(ch) || ch == '_'; });
}

[[noreturn]] void fail(const Line& line, const std::string& field, const std::string& what) {
  throw ParseError("line " + std::to_string(line.number) + ": field '" + field + "': " + what);
}

double real_at(const Line& line, std::size_t k, const std::string& field) {
  if (k >= line.tokens.size()) fail(line, field, "missing value");
  const auto& tok = line.tokens[k];
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(line, field, "not a number: '" + tok + "'");
  return value;
}

template <typename Int>
Int int_at(const Line& line, std::size_t k, const std::string& field) {
  if (k >= line.tokens.size()) fail(line, field, "missing value");
  const auto& tok = line.tokens[k];
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(line, field, "not an integer: '" + tok + "'");
  return value;
}

void expect_arity(const Line& line, std::size_t n, const std::string& field) {
  if (line.tokens.size() != n)
    fail(line, field, "expected " + std::to_string(n) + " columns, got " + std::to_string(line.tokens.size()));
}

std::size_t index_at(const Line& line, std::size_t k, std::size_t count, const std::string& field) {
  const auto id = int_at<long long>(line, k, field);
  if (id < 1 || static_cast<std::size_t>(id) > count)
    fail(line, field, "id " + std::to_string(id) + " out of range 1.." + std::to_string(count));
  return static_cast<std::size_t>(id - 1);
}

}  // namespace

Instance read_instance(std::istream& is) {
  const auto lines = tokenize(is);
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != "MMIRP-INSTANCE")
    throw ParseError("field 'magic': expected 'MMIRP-INSTANCE 1' header");
  if (lines[0].tokens[1] != "1") fail(lines[0], "version", "unsupported version " + lines[0].tokens[1]);

  std::map<std::string, const Line*> header;
  std::map<std::string, std::vector<const Line*>> sections;
  static const std::array<std::string, 7> header_keys{"customers", "periods", "vehicles", "products",
                                                      "grid",      "seed",    "supplier"};
  static const std::array<std::string, 5> section_names{"PRODUCTS", "VEHICLES", "CUSTOMERS", "DEMAND", "END"};

  std::string current;
  bool ended = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (ended) fail(line, "END", "content after END");
    if (is_section_name(line)) {
      const auto& name = line.tokens[0];
      if (std::find(section_names.begin(), section_names.end(), name) == section_names.end())
        fail(line, name, "unknown section");
      if (sections.count(name)) fail(line, name, "duplicate section");
      if (name == "END") {
        ended = true;
        continue;
      }
      current = name;
      sections[name];
      continue;
    }
    if (current.empty()) {
      const auto& key = line.tokens[0];
      if (std::find(header_keys.begin(), header_keys.end(), key) == header_keys.end())
        fail(line, key, "unknown header key");
      if (header.count(key)) fail(line, key, "duplicate header key");
      header[key] = &line;
    } else {
      sections[current].push_back(&line);
    }
  }

  auto head = [&](const std::string& key) -> const Line& {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError("field '" + key + "': missing header entry");
    return *it->second;
  };
  auto count = [&](const std::string& key) {
    const Line& l = head(key);
    expect_arity(l, 2, key);
    return int_at<std::size_t>(l, 1, key);
  };
  auto section = [&](const std::string& name) -> const std::vector<const Line*>& {
    auto it = sections.find(name);
    if (it == sections.end()) {
      std::string lower = name;
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
      throw ParseError("field '" + lower + "': missing section " + name);
    }
    return it->second;
  };

  const std::size_t n_i = count("customers");
  const std::size_t n_t = count("periods");
  const std::size_t n_v = count("vehicles");
  const std::size_t n_p = count("products");

  Instance inst;
  inst.periods = n_t;
  {
    const Line& l = head("grid");
    expect_arity(l, 2, "grid");
    inst.grid_size = real_at(l, 1, "grid");
  }
  {
    const Line& l = head("seed");
    expect_arity(l, 2, "seed");
    inst.seed = int_at<std::uint64_t>(l, 1, "seed");
  }
  {
    const Line& l = head("supplier");
    expect_arity(l, 3, "supplier");
    inst.supplier_location = {real_at(l, 1, "supplier"), real_at(l, 2, "supplier")};
  }

  const auto& prod_lines = section("PRODUCTS");
  const auto& veh_lines = section("VEHICLES");
  const auto& cust_lines = section("CUSTOMERS");
  const auto& dem_lines = section("DEMAND");
  if (!ended) throw ParseError("field 'end': missing END marker");

  auto check_rows = [](const std::vector<const Line*>& rows, std::size_t n, const std::string& field) {
    if (rows.size() != n)
      throw ParseError("field '" + field + "': expected " + std::to_string(n) + " rows, got " +
                       std::to_string(rows.size()));
  };

  check_rows(prod_lines, n_p, "products");
  inst.products.resize(n_p);
  std::vector<bool> seen(n_p, false);
  for (const Line* l : prod_lines) {
    expect_arity(*l, 2, "products");
    const auto p = index_at(*l, 0, n_p, "products");
    if (seen[p]) fail(*l, "products", "duplicate id");
    seen[p] = true;
    inst.products[p] = {static_cast<int>(p), real_at(*l, 1, "products.weight")};
  }

  check_rows(veh_lines, n_v, "vehicles");
  inst.vehicles.resize(n_v);
  seen.assign(n_v, false);
  for (const Line* l : veh_lines) {
    expect_arity(*l, 2 + n_t, "vehicles");
    const auto v = index_at(*l, 0, n_v, "vehicles");
    if (seen[v]) fail(*l, "vehicles", "duplicate id");
    seen[v] = true;
    VehicleSpec veh;
    veh.id = static_cast<int>(v);
    veh.capacity = real_at(*l, 1, "vehicles.capacity");
    for (std::size_t t = 0; t < n_t; ++t) veh.fixed_cost.push_back(real_at(*l, 2 + t, "vehicles.fixed_cost"));
    inst.vehicles[v] = std::move(veh);
  }

  check_rows(cust_lines, n_i, "customers");
  inst.customers.resize(n_i);
  seen.assign(n_i, false);
  for (const Line* l : cust_lines) {
    expect_arity(*l, 4 + n_p, "customers");
    const auto i = index_at(*l, 0, n_i, "customers");
    if (seen[i]) fail(*l, "customers", "duplicate id");
    seen[i] = true;
    CustomerSpec c;
    c.id = static_cast<int>(i);
    c.location = {real_at(*l, 1, "customers.x"), real_at(*l, 2, "customers.y")};
    c.storage_capacity = real_at(*l, 3, "customers.storage");
    for (std::size_t p = 0; p < n_p; ++p) c.holding_cost.push_back(real_at(*l, 4 + p, "customers.holding_cost"));
    inst.customers[i] = std::move(c);
  }

  check_rows(dem_lines, n_i * n_t, "demand");
  inst.demand = DemandTensor(n_p, n_i, n_t);
  seen.assign(n_i * n_t, false);
  for (const Line* l : dem_lines) {
    expect_arity(*l, 2 + n_p, "demand");
    const auto i = index_at(*l, 0, n_i, "demand.customer");
    const auto t = index_at(*l, 1, n_t, "demand.period");
    if (seen[i * n_t + t]) fail(*l, "demand", "duplicate (customer, period)");
    seen[i * n_t + t] = true;
    for (std::size_t p = 0; p < n_p; ++p) inst.demand(p, i, t) = real_at(*l, 2 + p, "demand");
  }

  std::vector<Point> pts;
  for (const auto& c : inst.customers) pts.push_back(c.location);
  inst.travel_cost = travel_cost_matrix(inst.supplier_location, pts);

  require_valid(inst);
  return inst;
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path.string() + "'");
  return read_instance(is);
}

}  // namespace mmirp
