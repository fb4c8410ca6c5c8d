#include "kpcyl/miura.hpp"

namespace kpcyl {

namespace {

SpectralField miuraRaw(const SpectralField& v, double c, double sign) {
  requireLocalized(v);
  SpectralField out = sign * dX(v);
  out += dXinv(dY(v));
  out -= multiply(v, v);
  out.at(0, 0) += c / 2.0;  // constant lives in the (0,0) mode
  return out;
}

SpectralField miuraKink(const KinkBackground& bg, const SpectralField& w, double sign,
                        double loc_tol) {
  requireLocalized(w, loc_tol);
  SpectralField out = sign * dX(w);
  out += dXinv(dY(w));
  std::vector<double> twoQ(bg.q.size());
  for (std::size_t i = 0; i < twoQ.size(); ++i) twoQ[i] = 2.0 * bg.q[i];
  out -= multiplyPhys(w, twoQ);
  out -= multiply(w, w);
  return out;
}

}  // namespace

SpectralField miuraPlusRaw(const SpectralField& v, double c) { return miuraRaw(v, c, 1.0); }
SpectralField miuraMinusRaw(const SpectralField& v, double c) { return miuraRaw(v, c, -1.0); }

SpectralField miuraPlusKink(const KinkBackground& bg, const SpectralField& w,
                            double loc_tol) {
  SpectralField out = miuraKink(bg, w, 1.0, loc_tol);
  out += SpectralField::fromPhysical(bg.phi, w.grid());
  return out;
}

SpectralField miuraMinusKink(const KinkBackground& bg, const SpectralField& w,
                             double loc_tol) {
  return miuraKink(bg, w, -1.0, loc_tol);
}

}  // namespace kpcyl
