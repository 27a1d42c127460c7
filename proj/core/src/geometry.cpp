#include "erank/geometry.hpp"

#include <cmath>
#include <set>

#include "erank/errors.hpp"

namespace erank {

void VarietyPresentation::validate() const {
  std::set<std::string> names;
  for (const auto* list : {&x_vars, &y_vars})
    for (const auto& v : *list)
      if (!names.insert(v).second)
        throw InvalidArgumentError("variable '" + v + "' declared twice");
  for (const auto& g : generators)
    for (const auto& v : term_variables(g))
      if (!names.count(v))
        throw InvalidArgumentError("generator uses undeclared variable '" + v + "'");
}

VarietyPresentation formula_to_system(const PrenexFormula& f) {
  VarietyPresentation vp;
  vp.x_vars = free_variables(f.to_formula());
  vp.y_vars = f.bound;
  vp.generators = pp_equations(f.matrix);
  return vp;
}

PrenexFormula system_to_formula(const VarietyPresentation& vp) {
  vp.validate();
  std::vector<Formula> eqs;
  for (const auto& g : vp.generators)
    eqs.push_back(Formula::equal(g, Term::literal(0)));
  return {vp.y_vars, conj_of(eqs)};
}

namespace {

Formula system_matrix(const VarietyPresentation& vp) {
  std::vector<Formula> eqs;
  for (const auto& g : vp.generators)
    eqs.push_back(Formula::equal(g, Term::literal(0)));
  return conj_of(eqs);
}

std::uint64_t checked_states(std::uint64_t q, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > max_states() / q)
      throw CapExceededError("enumeration exceeds the state cap " + std::to_string(max_states()) + " (ERANK_MAX_STATES)");
    total *= q;
  }
  return total;
}

bool advance(std::vector<GaloisField::Elem>& v, std::size_t from, std::uint64_t q) {
  for (std::size_t k = v.size(); k-- > from;) {
    if (++v[k] < q)
      return true;
    v[k] = 0;
  }
  return false;
}

struct Extension {
  GaloisFieldPtr field;
  GaloisField::Elem a_image = 0;
  std::map<std::string, GaloisField::Elem> constants;
};

Extension make_extension(const GaloisFieldPtr& base, unsigned k) {
  if (k == 0)
    throw InvalidArgumentError("extension degree must be positive");
  Extension ext;
  const unsigned d = base->degree() * k;
  std::uint64_t size = 1;
  for (unsigned i = 0; i < d; ++i) {
    size *= base->characteristic();
    if (size > (1u << 22))
      throw CapExceededError("extension field F_" + std::to_string(base->order()) + "^" + std::to_string(k) +
                             " is above 2^22 elements");
  }
  ext.field = k == 1 ? base : GaloisField::make(base->characteristic(), d);
  if (base->degree() > 1) {
    // Send `a` to the least root of the base modulus.
    const auto& m = base->modulus();
    const GaloisField& E = *ext.field;
    bool found = false;
    for (GaloisField::Elem r = 0; r < E.order() && !found; ++r) {
      GaloisField::Elem acc = 0;
      for (std::size_t i = m.size(); i-- > 0;)
        acc = E.add(E.mul(acc, r), E.from_int(m[i]));
      if (acc == 0) {
        ext.a_image = r;
        found = true;
      }
    }
    if (!found)
      throw std::logic_error("base modulus has no root in the extension");
    ext.constants["a"] = ext.a_image;
  }
  return ext;
}

GaloisField::Elem embed(const GaloisField& base, const Extension& ext, GaloisField::Elem x) {
  if (base.degree() == 1)
    return ext.field->from_int(x);
  const GaloisField& E = *ext.field;
  GaloisField::Elem acc = 0;
  auto c = base.coefficients(x);
  for (std::size_t i = c.size(); i-- > 0;)
    acc = E.add(E.mul(acc, ext.a_image), E.from_int(c[i]));
  return acc;
}

template <class Visit>
void scan_fibre(const VarietyPresentation& vp, const std::vector<GaloisField::Elem>& x0, const Extension& ext,
                const GaloisField& base, Visit visit) {
  vp.validate();
  if (x0.size() != vp.x_vars.size())
    throw InvalidArgumentError("point has " + std::to_string(x0.size()) + " coordinates, expected " +
                               std::to_string(vp.x_vars.size()));
  std::vector<std::string> order = vp.x_vars;
  order.insert(order.end(), vp.y_vars.begin(), vp.y_vars.end());
  CompiledFormula c(system_matrix(vp), ext.field, order, ext.constants);
  const std::uint64_t q = ext.field->order();
  checked_states(q, vp.y_vars.size());
  std::vector<GaloisField::Elem> values(order.size(), 0);
  for (std::size_t i = 0; i < x0.size(); ++i) {
    if (x0[i] >= base.order())
      throw InvalidArgumentError("point coordinate outside " + base.name());
    values[i] = embed(base, ext, x0[i]);
  }
  do {
    if (c.eval(values.data()))
      visit(values);
  } while (advance(values, x0.size(), q));
}

} // namespace

DefinableSet image_over_finite(const VarietyPresentation& vp, const GaloisFieldPtr& field) {
  vp.validate();
  std::vector<std::string> order = vp.x_vars;
  order.insert(order.end(), vp.y_vars.begin(), vp.y_vars.end());
  const std::uint64_t q = field->order();
  const std::uint64_t nx = checked_states(q, vp.x_vars.size());
  checked_states(q, order.size());
  CompiledFormula c(system_matrix(vp), field, order);
  std::vector<char> hit(nx, 0);
  std::vector<GaloisField::Elem> values(order.size(), 0);
  do {
    std::uint64_t xi = 0;
    for (std::size_t i = 0; i < vp.x_vars.size(); ++i)
      xi = xi * q + values[i];
    if (!hit[xi] && c.eval(values.data()))
      hit[xi] = 1;
  } while (advance(values, 0, q));
  DefinableSet out;
  out.vars = vp.x_vars;
  out.profile = field->name();
  for (std::uint64_t i = 0; i < nx; ++i)
    if (hit[i])
      out.tuples.push_back(tuple_at(i, vp.x_vars.size(), q));
  return out;
}

FibrePoints fibre_points(const VarietyPresentation& vp, const std::vector<GaloisField::Elem>& x0,
                         const GaloisFieldPtr& base, unsigned k) {
  Extension ext = make_extension(base, k);
  FibrePoints out;
  out.extension = ext.field;
  out.base_generator_image = ext.a_image;
  scan_fibre(vp, x0, ext, *base, [&](const std::vector<GaloisField::Elem>& v) {
    out.points.emplace_back(v.begin() + static_cast<long>(x0.size()), v.end());
  });
  return out;
}

std::uint64_t fibre_count(const VarietyPresentation& vp, const std::vector<GaloisField::Elem>& x0,
                          const GaloisFieldPtr& base, unsigned k) {
  Extension ext = make_extension(base, k);
  std::uint64_t n = 0;
  scan_fibre(vp, x0, ext, *base, [&](const std::vector<GaloisField::Elem>&) { ++n; });
  return n;
}

FibreDimEstimate fibre_dim_estimate(const VarietyPresentation& vp, const std::vector<GaloisField::Elem>& x0,
                                    const GaloisFieldPtr& base, unsigned max_k) {
  if (max_k < 2)
    throw InvalidArgumentError("fibre_dim_estimate needs max_k >= 2");
  FibreDimEstimate out;
  for (unsigned k = 1; k <= max_k; ++k)
    out.counts.push_back(fibre_count(vp, x0, base, k));
  // Least squares over k >= 2 with points, falling back to every k.
  std::vector<std::pair<double, double>> pts;
  const double lq = std::log(static_cast<double>(base->order()));
  for (unsigned k = 2; k <= max_k; ++k)
    if (out.counts[k - 1] > 0)
      pts.emplace_back(k, std::log(static_cast<double>(out.counts[k - 1])) / lq);
  if (pts.size() < 2) {
    pts.clear();
    for (unsigned k = 1; k <= max_k; ++k)
      if (out.counts[k - 1] > 0)
        pts.emplace_back(k, std::log(static_cast<double>(out.counts[k - 1])) / lq);
  }
  if (pts.empty()) {
    out.estimated_dim = -1;
    out.exact = true;
    out.range_low = out.range_high = -1;
    return out;
  }
  if (pts.size() == 1) {
    out.slope = 0;
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = static_cast<double>(pts.size());
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  out.estimated_dim = std::max(0L, std::lround(out.slope));
  out.exact = std::fabs(out.slope - static_cast<double>(out.estimated_dim)) < 0.2;
  if (out.exact) {
    out.range_low = out.range_high = out.estimated_dim;
  } else {
    out.range_low = std::max(0L, static_cast<long>(std::floor(out.slope)));
    out.range_high = std::max(0L, static_cast<long>(std::ceil(out.slope)));
  }
  return out;
}

} // namespace erank
