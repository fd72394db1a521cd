#include "kwise/serialize.hpp"

#include <iomanip>
#include <sstream>

namespace kwise {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const ExactReal& x) {
  if (x.is_rational()) return to_json(x.rational());
  const auto& a = x.algebraic();
  return Json{{"defining", to_json(a.defining())},
              {"isolating", Json::array({to_json(a.lo()), to_json(a.hi())})},
              {"approx", x.decimal()}};
}

Json to_json(const Polynomial& f) {
  Json out = Json::array();
  for (const auto& c : f.coeffs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const DualBasis& b) { return b.indices(); }

Json to_json(const ExactInterval& iv) {
  return Json{{"lo", to_json(iv.lo)},
              {"hi", to_json(iv.hi)},
              {"lo_decimal", iv.lo.decimal()},
              {"hi_decimal", iv.hi.decimal()},
              {"length", iv.length_decimal(kLengthDigits)}};
}

Json to_json(const PiecewisePolynomial& m) {
  Json pieces = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i)
    pieces.push_back(Json{{"index", i + 1},
                          {"basis", to_json(m.bases()[i])},
                          {"interval", to_json(m.interval(i))},
                          {"coefficients", to_json(m.pieces()[i])},
                          {"polynomial", m.pieces()[i].to_string()}});
  Json breaks = Json::array();
  for (const auto& b : m.breakpoints()) breaks.push_back(to_json(b));
  return Json{{"n", m.n()}, {"k", m.k()}, {"breakpoints", breaks}, {"pieces", pieces}};
}

Json to_json(const OptimizingDistribution& d) {
  Json v = Json::array(), w = Json::array();
  for (const auto& x : d.v) v.push_back(to_json(x));
  for (const auto& x : d.w) w.push_back(to_json(x));
  return Json{{"v", v}, {"w", w}, {"support", d.support()}};
}

Json to_json(const TheoremCheck& c) {
  return Json{{"id", c.id}, {"description", c.description}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}};
}

Json to_json(const ConjectureResult& c) {
  return Json{{"id", c.id}, {"statement", c.statement}, {"verdict", to_string(c.verdict)}, {"witness", c.witness}};
}

Json to_json(const StudyReport& r) {
  Json realizable = Json::array();
  for (std::size_t i = 0; i < r.realizable.size(); ++i) {
    const auto& e = r.realizable[i];
    Json row{{"i", i + 1}, {"basis", to_json(e.basis)}, {"interval", to_json(e.interval)}};
    if (e.spread) row["spread"] = *e.spread;
    realizable.push_back(std::move(row));
  }
  Json transitions = Json::array();
  for (const auto& t : r.transitions)
    transitions.push_back(Json{{"at", to_json(t.at)}, {"leaving", t.leaving}, {"entering", t.entering}});
  Json exceptional = Json::array();
  for (const auto& x : r.exceptional_points) exceptional.push_back(to_json(x));
  Json conj = Json::array();
  for (const auto& c : r.conjectures) conj.push_back(to_json(c));
  Json out{{"n", r.n},
           {"k", r.k},
           {"N", r.realizable.size()},
           {"realizable", realizable},
           {"transitions", transitions},
           {"exceptional_points", exceptional}};
  if (r.msp) out["msp"] = *r.msp;
  out["conjectures"] = conj;
  if (r.correlation) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(kLengthDigits) << *r.correlation;
    out["correlation"] = os.str();
  } else {
    out["correlation"] = nullptr;
  }
  out["proposition_r"] = Json{{"verdict", to_string(r.proposition_r.verdict)},
                              {"N", r.proposition_r.count},
                              {"bound", r.proposition_r.bound},
                              {"detail", r.proposition_r.detail}};
  return out;
}

Json to_json(const SpreadStats& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    Json row{{"n", r.n}, {"msp", r.msp}};
    if (r.predicted) row["predicted"] = *r.predicted;
    rows.push_back(std::move(row));
  }
  return Json{{"k", s.k}, {"rows", rows}};
}

Json envelope(const std::string& command, Json params, Json result, Json exactness) {
  return Json{{"schema", kSchemaVersion},
              {"command", command},
              {"params", std::move(params)},
              {"result", std::move(result)},
              {"exactness", std::move(exactness)}};
}

}  // namespace kwise
