#include "linespec/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace linespec {

namespace {

json cvec_to_json(const CVec& v) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"re", re}, {"im", im}};
}

CVec cvec_from_json(const json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != im.size())
    throw std::invalid_argument("cvec_from_json: re/im length mismatch");
  CVec v(re.size());
  for (std::size_t i = 0; i < re.size(); ++i)
    v(i) = cplx(re[i].get<double>(), im[i].get<double>());
  return v;
}

}  // namespace

json samples_to_json(const Samples& s) {
  json j = cvec_to_json(s.data());
  j["n"] = s.n();
  return j;
}

Samples samples_from_json(const json& j) {
  Samples s(cvec_from_json(j));
  if (s.n() < 3 || s.n() % 2 == 0)
    throw std::invalid_argument("samples_from_json: length must be odd and >= 3");
  return s;
}

json decomposition_to_json(const AtomicDecomposition& d) {
  json entries = json::array();
  for (const auto& e : d.entries)
    entries.push_back({{"freq", e.freq.value()},
                       {"amp_re", e.amp.real()},
                       {"amp_im", e.amp.imag()}});
  return json{{"entries", entries}};
}

AtomicDecomposition decomposition_from_json(const json& j) {
  AtomicDecomposition d;
  for (const auto& e : j.at("entries"))
    d.entries.push_back({TorusFreq(e.at("freq").get<double>()),
                         cplx(e.at("amp_re").get<double>(),
                              e.at("amp_im").get<double>())});
  return d;
}

json solution_to_json(const AstSolution& sol, const Samples& y, double tau) {
  return json{{"y", samples_to_json(y)},
              {"tau", tau},
              {"x_hat", samples_to_json(sol.x_hat)},
              {"u", cvec_to_json(sol.u)},
              {"t", sol.t},
              {"q_hat", cvec_to_json(sol.q_hat)},
              {"iterations", sol.iterations},
              {"primal_residual", sol.primal_residual},
              {"dual_residual", sol.dual_residual},
              {"objective", sol.objective},
              {"converged", sol.converged},
              {"best_merit", sol.best_merit},
              {"dual_sup", sol.dual_sup}};
}

StoredSolution solution_from_json(const json& j) {
  StoredSolution st;
  st.y = samples_from_json(j.at("y"));
  st.tau = j.at("tau").get<double>();
  st.sol.x_hat = samples_from_json(j.at("x_hat"));
  st.sol.u = cvec_from_json(j.at("u"));
  st.sol.t = j.at("t").get<double>();
  st.sol.q_hat = cvec_from_json(j.at("q_hat"));
  st.sol.iterations = j.at("iterations").get<int>();
  st.sol.primal_residual = j.at("primal_residual").get<double>();
  st.sol.dual_residual = j.at("dual_residual").get<double>();
  st.sol.objective = j.at("objective").get<double>();
  st.sol.converged = j.at("converged").get<bool>();
  st.sol.best_merit = j.value("best_merit", 0.0);
  st.sol.dual_sup = j.value("dual_sup", 0.0);
  return st;
}

json certificate_report_to_json(const CertificateReport& rep) {
  const char* kind = rep.kind == CertificateKind::Sign     ? "sign"
                     : rep.kind == CertificateKind::Linear ? "linear"
                                                           : "selector";
  return json{{"kind", kind},
              {"n", rep.n},
              {"k", rep.k},
              {"inside_guarantee", rep.inside_guarantee},
              {"condition_number", rep.condition_number},
              {"ill_conditioned", rep.ill_conditioned},
              {"interp_residual", rep.interp_residual},
              {"interp_ok", rep.interp_ok},
              {"sup_far", rep.sup_far},
              {"far_margin", rep.far_margin},
              {"far_constant", rep.far_constant},
              {"far_ok", rep.far_ok},
              {"quad_ca", rep.quad_ca},
              {"quad_ca_prime", rep.quad_ca_prime},
              {"near_ok", rep.near_ok},
              {"l1_norm", rep.l1_norm},
              {"l1_constant", rep.l1_constant},
              {"bernstein_lhs", rep.bernstein_lhs},
              {"bernstein_rhs", rep.bernstein_rhs},
              {"bernstein_ok", rep.bernstein_ok},
              {"all_ok", rep.all_ok()}};
}

Samples load_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    std::vector<cplx> vals;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      // header lines are skipped by parse failure
      std::istringstream ss(line);
      std::vector<double> cols;
      std::string field;
      bool ok = true;
      while (std::getline(ss, field, ',')) {
        try {
          cols.push_back(std::stod(field));
        } catch (...) {
          ok = false;
          break;
        }
      }
      if (!ok || cols.empty()) continue;
      if (cols.size() >= 3) vals.emplace_back(cols[1], cols[2]);
      else if (cols.size() == 2) vals.emplace_back(cols[0], cols[1]);
      else vals.emplace_back(cols[0], 0.0);
    }
    CVec v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v(i) = vals[i];
    Samples s(std::move(v));
    if (s.n() < 3 || s.n() % 2 == 0)
      throw std::invalid_argument("samples CSV: length must be odd and >= 3");
    return s;
  }
  json j;
  in >> j;
  if (j.contains("samples")) return samples_from_json(j.at("samples"));
  return samples_from_json(j);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace linespec
