#include "markedpoints/io.hpp"

#include "markedpoints/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace markedpoints {

namespace {

std::vector<std::string> split_fields(const std::string& line)
{
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ','))
    out.push_back(cell);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

std::string trim(std::string s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, std::size_t line)
{
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    fail(ErrorCode::parse_error, "line " + std::to_string(line) + ": '" + t + "' is not a number");
  return v;
}

std::string comment_block(const std::map<std::string, std::string>& attributes)
{
  std::string out;
  for (const auto& [k, v] : attributes)
    out += "# " + k + "=" + v + "\n";
  return out;
}

} // namespace

std::string format_number(double v)
{
  if (std::isnan(v))
    return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    fail(ErrorCode::io_error, "cannot write " + path.string());
}

LinearNetwork parse_network_json(const std::string& text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("network json: ") + e.what());
  }
  std::vector<Point2> vertices;
  std::vector<Segment> segments;
  try {
    for (const auto& v : doc.at("vertices")) {
      if (v.size() != 2)
        fail(ErrorCode::parse_error, "network json: vertex needs two coordinates");
      vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    }
    for (const auto& s : doc.at("segments")) {
      if (s.size() != 2)
        fail(ErrorCode::parse_error, "network json: segment needs two vertex indices");
      const auto a = s.at(0).get<long long>();
      const auto b = s.at(1).get<long long>();
      if (a < 0 || b < 0)
        fail(ErrorCode::invalid_network, "network json: negative vertex index");
      segments.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("network json: ") + e.what());
  }
  return LinearNetwork(std::move(vertices), std::move(segments));
}

LinearNetwork read_network_json(const std::filesystem::path& path)
{
  try {
    return parse_network_json(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::io_error)
      throw;
    fail(e.code(), path.string() + ": " + e.what());
  }
}

std::string network_to_json(const LinearNetwork& net)
{
  std::string out = "{\n  \"vertices\": [";
  for (std::size_t i = 0; i < net.vertex_count(); ++i) {
    const auto& v = net.vertices()[i];
    out += (i ? ", [" : "[") + format_number(v.x) + ", " + format_number(v.y) + "]";
  }
  out += "],\n  \"segments\": [";
  for (std::size_t i = 0; i < net.segment_count(); ++i) {
    const auto& s = net.segments()[i];
    out += (i ? ", [" : "[") + std::to_string(s.a) + ", " + std::to_string(s.b) + "]";
  }
  out += "]\n}\n";
  return out;
}

MarkedPointPattern parse_pattern_csv(const std::string& text, Domain domain)
{
  const bool network = std::holds_alternative<NetworkPtr>(domain);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#')
      continue;
    header = split_fields(line);
    break;
  }
  if (header.empty())
    fail(ErrorCode::parse_error, "pattern csv has no header row");
  int c0 = -1, c1 = -1, ct = -1, cm = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto name = trim(header[i]);
    const int idx = static_cast<int>(i);
    if (name == (network ? "segment" : "x"))
      c0 = idx;
    else if (name == (network ? "offset" : "y"))
      c1 = idx;
    else if (name == "type")
      ct = idx;
    else if (name == "mark")
      cm = idx;
    else
      fail(ErrorCode::parse_error, "pattern csv: unexpected column '" + name + "'");
  }
  if (c0 < 0 || c1 < 0)
    fail(ErrorCode::parse_error, network ? "pattern csv needs segment and offset columns"
                                         : "pattern csv needs x and y columns");

  MarkedPointPattern p(std::move(domain));
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#')
      continue;
    const auto cells = split_fields(line);
    if (cells.size() != header.size())
      fail(ErrorCode::parse_error, "line " + std::to_string(lineno) + ": expected " +
                                       std::to_string(header.size()) + " fields");
    MarkedPoint pt;
    const double a = parse_double(cells[static_cast<std::size_t>(c0)], lineno);
    const double b = parse_double(cells[static_cast<std::size_t>(c1)], lineno);
    if (network) {
      if (!(a >= 0.0) || a != std::floor(a))
        fail(ErrorCode::invalid_location,
             "line " + std::to_string(lineno) + ": segment must be a nonnegative integer");
      pt.location = NetworkLocation{static_cast<std::size_t>(a), b};
    } else {
      pt.location = Point2{a, b};
    }
    if (ct >= 0) {
      auto label = trim(cells[static_cast<std::size_t>(ct)]);
      if (!label.empty())
        pt.type = std::move(label);
    }
    if (cm >= 0 && !trim(cells[static_cast<std::size_t>(cm)]).empty())
      pt.mark = parse_double(cells[static_cast<std::size_t>(cm)], lineno);
    p.push_back(std::move(pt));
  }
  return validate_pattern(std::move(p));
}

MarkedPointPattern read_pattern_csv(const std::filesystem::path& path, Domain domain)
{
  const auto text = read_text_file(path);
  try {
    return parse_pattern_csv(text, std::move(domain));
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

std::string pattern_to_csv(const MarkedPointPattern& p)
{
  bool typed = false, marked = false;
  for (const auto& pt : p.points()) {
    typed = typed || pt.type.has_value();
    marked = marked || pt.mark.has_value();
  }
  std::string out = p.on_network() ? "segment,offset" : "x,y";
  if (typed)
    out += ",type";
  if (marked)
    out += ",mark";
  out += "\n";
  for (const auto& pt : p.points()) {
    if (const auto* u = std::get_if<Point2>(&pt.location))
      out += format_number(u->x) + "," + format_number(u->y);
    else {
      const auto& loc = std::get<NetworkLocation>(pt.location);
      out += std::to_string(loc.segment) + "," + format_number(loc.offset);
    }
    if (typed) {
      if (pt.type && pt.type->find_first_of(",\n") != std::string::npos)
        fail(ErrorCode::invalid_argument, "type labels may not contain commas or newlines");
      out += "," + pt.type.value_or("");
    }
    if (marked)
      out += "," + (pt.mark ? format_number(*pt.mark) : std::string());
    out += "\n";
  }
  return out;
}

std::string curve_to_csv(const SummaryCurve& curve)
{
  auto attributes = curve.attributes;
  attributes["statistic"] = curve.statistic;
  std::string out = comment_block(attributes);
  out += curve.theoretical ? "r,value,theoretical\n" : "r,value\n";
  for (std::size_t i = 0; i < curve.r.size(); ++i) {
    out += format_number(curve.r[i]) + "," + format_number(curve.values[i]);
    if (curve.theoretical)
      out += "," + format_number((*curve.theoretical)[i]);
    out += "\n";
  }
  return out;
}

std::string curves_to_wide_csv(std::span<const SummaryCurve> curves)
{
  if (curves.empty())
    return "r\n";
  std::string out = "r";
  for (const auto& c : curves) {
    if (c.r != curves.front().r)
      fail(ErrorCode::grid_mismatch, "curves do not share one r grid");
    out += "," + c.statistic;
  }
  out += "\n";
  for (std::size_t i = 0; i < curves.front().r.size(); ++i) {
    out += format_number(curves.front().r[i]);
    for (const auto& c : curves)
      out += "," + format_number(c.values[i]);
    out += "\n";
  }
  return out;
}

std::string band_to_csv(const EnvelopeBand& band)
{
  std::string out = comment_block({{"statistic", band.statistic},
                                   {"nsim", std::to_string(band.nsim)},
                                   {"level", format_number(band.level)},
                                   {"rank", std::to_string(band.rank)}});
  out += band.observed ? "r,lo,mean,hi,n_effective,observed\n" : "r,lo,mean,hi,n_effective\n";
  for (std::size_t i = 0; i < band.r.size(); ++i) {
    out += format_number(band.r[i]) + "," + format_number(band.lo[i]) + "," +
           format_number(band.mean[i]) + "," + format_number(band.hi[i]) + "," +
           std::to_string(band.n_effective[i]);
    if (band.observed)
      out += "," + format_number((*band.observed)[i]);
    out += "\n";
  }
  return out;
}

std::string intensity_to_csv(const IntensityEstimate& estimate)
{
  const auto& r = estimate.raster;
  std::string out = comment_block({{"method", to_string(estimate.method)},
                                   {"kernel", to_string(estimate.kernel)},
                                   {"sigma", format_number(estimate.sigma)},
                                   {"nx", std::to_string(r.dims().nx)},
                                   {"ny", std::to_string(r.dims().ny)}});
  out += "cx,cy,value\n";
  for (std::size_t iy = 0; iy < r.dims().ny; ++iy)
    for (std::size_t ix = 0; ix < r.dims().nx; ++ix) {
      const auto c = r.cell_center(ix, iy);
      out += format_number(c.x) + "," + format_number(c.y) + "," + format_number(r(ix, iy)) + "\n";
    }
  return out;
}

} // namespace markedpoints
