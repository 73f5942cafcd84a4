#include "relaxlab/harness/setup.hpp"

namespace relaxlab::harness {

models::Flux ModelSetup::make_flux() const {
  if (flux == "polynomial") return models::Flux::polynomial(n, d, terms);
  return models::make_builtin_flux(flux, n, d);
}

models::JinXinModel ModelSetup::model(double eps_value) const {
  models::JinXinModel m{make_flux(), a, eps_value};
  m.validate();
  return m;
}

models::LimitModel ModelSetup::limit() const {
  models::LimitModel m{make_flux(), a};
  m.validate();
  return m;
}

}  // namespace relaxlab::harness
