#include "gsd3/report.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gsd3 {

namespace {

// Incremental pretty printer with two-space indentation. The report schema
// is fixed, so a full serialization library buys nothing here, and the
// 17-digit number rendering stays under our control.
class JsonWriter {
 public:
  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(const char* name) {
    separate();
    out_ += '"';
    out_ += name;
    out_ += "\": ";
    pending_value_ = true;
  }

  void value(double v) { emit(format_double(v)); }
  void value(int v) { emit(std::to_string(v)); }
  void value(std::uint64_t v) { emit(std::to_string(v)); }
  void value(bool v) { emit(v ? "true" : "false"); }
  void value(const std::string& s) { emit(quoted(s)); }
  void value(const char* s) { emit(quoted(s)); }

  std::string str() const { return out_ + "\n"; }

 private:
  static std::string quoted(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') {
        q += '\\';
        q += c;
      } else if (c == '\n') {
        q += "\\n";
      } else {
        q += c;
      }
    }
    q += '"';
    return q;
  }

  void open(char bracket) {
    separate();
    out_ += bracket;
    first_.push_back(true);
  }

  void close(char bracket) {
    first_.pop_back();
    out_ += '\n';
    out_.append(2 * first_.size(), ' ');
    out_ += bracket;
  }

  void emit(const std::string& token) {
    separate();
    out_ += token;
  }

  // Inserts the comma/newline/indent due before a new element, unless the
  // element is the value completing a "key": prefix.
  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (first_.empty()) return;
    if (!first_.back()) out_ += ',';
    first_.back() = false;
    out_ += '\n';
    out_.append(2 * first_.size(), ' ');
  }

  std::string out_;
  std::vector<bool> first_;
  bool pending_value_ = false;
};

void write_qubit(JsonWriter& w, const QubitVector& q) {
  w.begin_array();
  for (const cplx* a : {&q.a0, &q.a1}) {
    w.begin_array();
    w.value(a->real());
    w.value(a->imag());
    w.end_array();
  }
  w.end_array();
}

void write_triple(JsonWriter& w, const ProductTriple& t, const char* prefix) {
  w.begin_object();
  const std::string names[3] = {std::string(prefix) + "1", std::string(prefix) + "2",
                                std::string(prefix) + "3"};
  for (int k = 0; k < 3; ++k) {
    w.key(names[k].c_str());
    write_qubit(w, t.q[k]);
  }
  w.end_object();
}

void write_verdicts(JsonWriter& w, const GsdVerdicts& v) {
  w.begin_object();
  w.key("inequality_ok");
  w.value(v.inequality_ok);
  w.key("lambda4_bound_ok");
  w.value(v.lambda4_bound_ok);
  w.key("global_max_ok");
  w.value(v.global_max_ok);
  w.key("overall");
  w.value(v.overall);
  w.end_object();
}

std::string triple_text(const ProductTriple& t, const char* prefix) {
  std::ostringstream os;
  for (int k = 0; k < 3; ++k) {
    if (k) os << "  ";
    os << prefix << k + 1 << "=(" << format_double(t.q[k].a0.real()) << " "
       << format_double(t.q[k].a0.imag()) << ", " << format_double(t.q[k].a1.real()) << " "
       << format_double(t.q[k].a1.imag()) << ")";
  }
  return os.str();
}

const char* yn(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string digest_bytes(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failure on file: " + path);
  return buf.str();
}

void write_file_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failure on file: " + path);
}

PureState3Q parse_state_json(const std::string& bytes, double* norm_correction) {
  const nlohmann::json doc = nlohmann::json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) throw StateParseError("state file is not valid JSON");
  if (!doc.is_object()) throw StateParseError("state file root must be an object");
  if (!doc.contains("amplitudes")) throw StateParseError("missing field: amplitudes");
  const auto& amps = doc["amplitudes"];
  if (!amps.is_array() || amps.size() != 8)
    throw StateParseError("field amplitudes must be an array of 8 entries");
  std::array<cplx, 8> raw{};
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& entry = amps[i];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      std::ostringstream msg;
      msg << "field amplitudes[" << i << "] must be a [re, im] pair of numbers";
      throw StateParseError(msg.str());
    }
    raw[i] = cplx(entry[0].get<double>(), entry[1].get<double>());
  }
  try {
    return PureState3Q::from_amplitudes(raw, norm_correction);
  } catch (const std::invalid_argument& e) {
    throw StateParseError(std::string("field amplitudes: ") + e.what());
  }
}

std::string render_state_json(const PureState3Q& state) {
  JsonWriter w;
  w.begin_object();
  w.key("amplitudes");
  w.begin_array();
  for (const cplx& a : state.amp) {
    w.begin_array();
    w.value(a.real());
    w.value(a.imag());
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string render_report_json(const DecompositionReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("input_digest");
  w.value(r.input_digest);

  w.key("config");
  w.begin_object();
  w.key("tol_convergence");
  w.value(r.config.tol_convergence);
  w.key("tol_match");
  w.value(r.config.tol_match);
  w.key("max_sweeps");
  w.value(r.config.max_sweeps);
  w.key("n_restarts");
  w.value(r.config.n_restarts);
  w.key("rng_seed");
  w.value(static_cast<std::uint64_t>(r.config.rng_seed));
  w.end_object();

  w.key("stationary_points");
  w.begin_array();
  for (const StationaryPoint& p : r.stationary_points) {
    w.begin_object();
    w.key("lambda");
    w.value(p.lambda);
    w.key("residual");
    w.value(p.residual);
    w.key("kind");
    w.value(to_string(p.kind));
    w.key("a_eigenvalues");
    w.begin_array();
    for (double ev : p.a_eigenvalues) w.value(ev);
    w.end_array();
    w.key("u1");
    write_qubit(w, p.triple.q[0]);
    w.key("u2");
    write_qubit(w, p.triple.q[1]);
    w.key("u3");
    write_qubit(w, p.triple.q[2]);
    w.end_object();
  }
  w.end_array();

  w.key("gsd");
  w.begin_object();
  w.key("lambda0");
  w.value(r.gsd.lambda0);
  w.key("lambda1");
  w.value(r.gsd.lambda1);
  w.key("lambda2");
  w.value(r.gsd.lambda2);
  w.key("lambda3");
  w.value(r.gsd.lambda3);
  w.key("lambda4");
  w.begin_array();
  w.value(r.gsd.lambda4.real());
  w.value(r.gsd.lambda4.imag());
  w.end_array();
  w.key("basis_u");
  write_triple(w, r.gsd.basis_u, "u");
  w.key("basis_v");
  write_triple(w, r.gsd.basis_v, "v");
  w.end_object();

  w.key("verdicts");
  write_verdicts(w, r.verdicts);

  w.key("literal_form");
  w.begin_object();
  w.key("present");
  w.value(r.literal_form.present);
  if (r.literal_form.present) {
    w.key("valid");
    w.value(r.literal_form.valid);
    w.key("lambda0");
    w.value(r.literal_form.lambda0);
    w.key("lambda1");
    w.value(r.literal_form.lambda1);
    w.key("lambda2");
    w.value(r.literal_form.lambda2);
    w.key("lambda3");
    w.value(r.literal_form.lambda3);
    w.key("lambda4");
    w.begin_array();
    w.value(r.literal_form.lambda4.real());
    w.value(r.literal_form.lambda4.imag());
    w.end_array();
    w.key("stationarity_residual");
    w.value(r.literal_form.stationarity_residual);
    w.key("schmidt_inequality");
    w.value(r.literal_form.schmidt_inequality);
    w.key("verdicts");
    write_verdicts(w, r.literal_form.verdicts);
  }
  w.end_object();

  w.key("residuals");
  w.begin_object();
  w.key("schmidt_inequality");
  w.value(r.residual_schmidt_inequality);
  w.key("reconstruction_infidelity");
  w.value(r.residual_reconstruction_infidelity);
  w.key("stationarity");
  w.value(r.residual_stationarity);
  w.end_object();

  w.key("warnings");
  w.begin_array();
  for (const std::string& s : r.warnings) w.value(s);
  w.end_array();

  w.key("discarded_restarts");
  w.value(r.discarded_restarts);
  w.end_object();
  return w.str();
}

std::string render_report_text(const DecompositionReport& r) {
  std::ostringstream os;
  os << "input digest: " << r.input_digest << "\n";
  os << "config: n_restarts=" << r.config.n_restarts << " rng_seed=" << r.config.rng_seed
     << " tol_convergence=" << format_double(r.config.tol_convergence)
     << " tol_match=" << format_double(r.config.tol_match)
     << " max_sweeps=" << r.config.max_sweeps << "\n";

  os << "stationary points (" << r.stationary_points.size() << "):\n";
  for (std::size_t i = 0; i < r.stationary_points.size(); ++i) {
    const StationaryPoint& p = r.stationary_points[i];
    os << "  [" << i << "] lambda=" << format_double(p.lambda)
       << " residual=" << format_double(p.residual) << " kind=" << to_string(p.kind) << "\n"
       << "      a_eigenvalues=(" << format_double(p.a_eigenvalues[0]) << ", "
       << format_double(p.a_eigenvalues[1]) << ", " << format_double(p.a_eigenvalues[2])
       << ")\n"
       << "      " << triple_text(p.triple, "u") << "\n";
  }

  os << "gsd:\n";
  os << "  lambda0=" << format_double(r.gsd.lambda0) << "\n";
  os << "  lambda1=" << format_double(r.gsd.lambda1) << "\n";
  os << "  lambda2=" << format_double(r.gsd.lambda2) << "\n";
  os << "  lambda3=" << format_double(r.gsd.lambda3) << "\n";
  os << "  lambda4=(" << format_double(r.gsd.lambda4.real()) << " "
     << format_double(r.gsd.lambda4.imag()) << ")\n";
  os << "  " << triple_text(r.gsd.basis_u, "u") << "\n";
  os << "  " << triple_text(r.gsd.basis_v, "v") << "\n";

  os << "verdicts: inequality_ok=" << yn(r.verdicts.inequality_ok)
     << " lambda4_bound_ok=" << yn(r.verdicts.lambda4_bound_ok)
     << " global_max_ok=" << yn(r.verdicts.global_max_ok)
     << " overall=" << yn(r.verdicts.overall) << "\n";

  if (!r.literal_form.present) {
    os << "literal form: absent\n";
  } else {
    const LiteralFormInfo& lf = r.literal_form;
    os << "literal form: present valid=" << yn(lf.valid) << "\n";
    os << "  lambda0=" << format_double(lf.lambda0) << " lambda1=" << format_double(lf.lambda1)
       << " lambda2=" << format_double(lf.lambda2) << " lambda3=" << format_double(lf.lambda3)
       << " lambda4=(" << format_double(lf.lambda4.real()) << " "
       << format_double(lf.lambda4.imag()) << ")\n";
    os << "  stationarity_residual=" << format_double(lf.stationarity_residual)
       << " schmidt_inequality=" << format_double(lf.schmidt_inequality) << "\n";
    os << "  verdicts: inequality_ok=" << yn(lf.verdicts.inequality_ok)
       << " lambda4_bound_ok=" << yn(lf.verdicts.lambda4_bound_ok)
       << " global_max_ok=" << yn(lf.verdicts.global_max_ok)
       << " overall=" << yn(lf.verdicts.overall) << "\n";
  }

  os << "residuals: schmidt_inequality=" << format_double(r.residual_schmidt_inequality)
     << " reconstruction_infidelity=" << format_double(r.residual_reconstruction_infidelity)
     << " stationarity=" << format_double(r.residual_stationarity) << "\n";

  os << "warnings (" << r.warnings.size() << "):\n";
  for (const std::string& s : r.warnings) os << "  - " << s << "\n";
  os << "discarded restarts: " << r.discarded_restarts << "\n";
  return os.str();
}

std::string render_scan_line(const ScanRecord& record, const SolverConfig& config) {
  std::ostringstream os;
  os << "{\"state_seed\":" << record.state_seed
     << ",\"lambda0\":" << format_double(record.lambda0)
     << ",\"lambda1\":" << format_double(record.lambda1)
     << ",\"lambda2\":" << format_double(record.lambda2)
     << ",\"lambda3\":" << format_double(record.lambda3)
     << ",\"lambda4_abs\":" << format_double(record.lambda4_abs)
     << ",\"lambda4_arg\":" << format_double(record.lambda4_arg)
     << ",\"inequality_residual\":" << format_double(record.inequality_residual)
     << ",\"n_restarts\":" << config.n_restarts << ",\"max_sweeps\":" << config.max_sweeps
     << ",\"tol_convergence\":" << format_double(config.tol_convergence)
     << ",\"tol_match\":" << format_double(config.tol_match)
     << ",\"rng_seed\":" << config.rng_seed << "}";
  return os.str();
}

}  // namespace gsd3
