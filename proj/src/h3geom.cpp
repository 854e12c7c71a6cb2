#include "hsm/h3geom.hpp"

#include <algorithm>
#include <cmath>

namespace hsm {

namespace {

Planed oriented_face(const Pointd* finite, int nf, const Boundaryd* ideal, int ni, const Pointd& opposite) {
  Planed pl = Planed::through(finite, nf, ideal, ni);
  return pl.side(opposite) > 0 ? pl : pl.flipped();
}

Planed oriented_face(const Pointd* finite, int nf, const Boundaryd* ideal, int ni, const Boundaryd& opposite) {
  Planed pl = Planed::through(finite, nf, ideal, ni);
  return pl.side(opposite) > 0 ? pl : pl.flipped();
}

}  // namespace

CharacteristicTetrahedron CharacteristicTetrahedron::standard() {
  CharacteristicTetrahedron t;
  t.v0 = Pointd(Cd(-std::sqrt(2.0) / std::sqrt(3.0), 0), 1 / std::sqrt(3.0));
  t.v1 = Pointd(Cd(-std::sqrt(3.0) / (2 * std::sqrt(2.0)), -1 / (2 * std::sqrt(2.0))), 1 / std::sqrt(2.0));
  t.v2 = Pointd(Cd(0, 0), 1);
  const Boundaryd inf = Boundaryd::infinity();

  const Pointd fa[3] = {t.v0, t.v1, t.v2};
  t.faces[0] = oriented_face(fa, 3, nullptr, 0, inf);
  const Pointd fb[2] = {t.v1, t.v2};
  t.faces[1] = oriented_face(fb, 2, &inf, 1, t.v0);
  const Pointd fc[2] = {t.v0, t.v2};
  t.faces[2] = oriented_face(fc, 2, &inf, 1, t.v1);
  const Pointd fd[2] = {t.v0, t.v1};
  t.faces[3] = oriented_face(fd, 2, &inf, 1, t.v2);
  return t;
}

CoxeterGenerators coxeter_generators() {
  const auto t = CharacteristicTetrahedron::standard();
  return {reflection_in_plane(t.face(Face::A)), reflection_in_plane(t.face(Face::B)),
          reflection_in_plane(t.face(Face::C)), reflection_in_plane(t.face(Face::D))};
}

HoneycombPatch honeycomb_patch() {
  const auto t = CharacteristicTetrahedron::standard();
  const auto gens = coxeter_generators();
  HoneycombPatch patch;
  patch.a0_begin = t.v0;
  patch.a0_end = gens.rb.apply(t.v0);
  patch.center = t.v2;

  // Orbit of v0 under <R_B, R_C>.
  std::vector<Pointd> orbit{t.v0};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto* g : {&gens.rb, &gens.rc}) {
      const Pointd q = g->apply(orbit[i]);
      const bool seen = std::any_of(orbit.begin(), orbit.end(), [&](const Pointd& p) { return dist(p, q) < 1e-9; });
      if (!seen) orbit.push_back(q);
    }
    if (orbit.size() > 64) throw GeometryError("hexagon orbit did not close");
  }
  std::sort(orbit.begin(), orbit.end(), [](const Pointd& a, const Pointd& b) {
    auto ang = [](const Pointd& p) {
      double a = std::arg(p.z) - std::arg(Cd(-1, 0));
      while (a < 0) a += 2 * kPi;
      while (a >= 2 * kPi - 1e-12) a -= 2 * kPi;
      return a;
    };
    return ang(a) < ang(b);
  });
  patch.h0 = std::move(orbit);
  return patch;
}

}  // namespace hsm
