#include <stdexcept>

#include "hashbound/partition.hpp"

namespace hashbound {

namespace {

class Builder {
 public:
  Builder(std::string tag, int l1, int l2) {
    c_.family_tag = std::move(tag);
    c_.l1 = l1;
    c_.l2 = l2;
  }

  SlotValue pv(const std::string& name, double lo, double hi) { return add(c_.p_vars, name, lo, hi); }
  SlotValue qv(const std::string& name, double lo, double hi) { return add(c_.q_vars, name, lo, hi); }

  Builder& seg(int mult, SlotValue p, SlotValue q) {
    if (mult < 0) throw std::logic_error("negative block size");
    if (mult > 0) c_.segments.push_back({mult, p, q});
    return *this;
  }

  Builder& choice(double v) {
    c_.choices.push_back(v);
    return *this;
  }

  Configuration take() { return std::move(c_); }

 private:
  static SlotValue add(std::vector<VarBox>& vars, const std::string& name, double lo, double hi) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i].name == name) return SlotValue::of_var(static_cast<int>(i));
    }
    vars.push_back({name, lo, hi});
    return SlotValue::of_var(static_cast<int>(vars.size()) - 1);
  }

  Configuration c_;
};

SlotValue k(double c) { return SlotValue::of(c); }

// Zero restriction with both readings of the zero count: all constant zeros,
// or constant zeros not opposite a heavy coordinate. Kept if either passes.
bool passes(const Configuration& c, int limit, int b, int j, bool check_p, bool check_q, double heavy) {
  auto ok = [&](bool exclude) {
    auto count = [&](bool p_side) {
      return exclude ? c.structural_zeros_excluding_heavy(p_side, heavy) : c.structural_zeros(p_side);
    };
    return (!check_p || zero_count_allowed(count(true), limit, b, j)) &&
           (!check_q || zero_count_allowed(count(false), limit, b, j));
  };
  return ok(false) || ok(true);
}

void push(std::vector<Configuration>& out, Configuration c, bool restrict, int limit, int b, int j, bool check_p,
          bool check_q, double heavy) {
  if (restrict && !passes(c, limit, b, j, check_p, check_q, heavy)) return;
  out.push_back(std::move(c));
}

// (0, delta) x l1, (alpha, 0) x l2, (beta, eta) x (b - l1 - l2): the shape of
// the unconstrained maximum.
void global_family(std::vector<Configuration>& out, int b, int j, bool restrict) {
  for (int l1 = 0; l1 <= b; ++l1) {
    for (int l2 = 0; l1 + l2 <= b; ++l2) {
      Builder g("global", l1, l2);
      auto d = g.qv("delta", 0, 1), a = g.pv("alpha", 0, 1), be = g.pv("beta", 0, 1), et = g.qv("eta", 0, 1);
      g.seg(l1, k(0), d).seg(l2, a, k(0)).seg(b - l1 - l2, be, et);
      push(out, g.take(), restrict, b - 1, b, j, true, true, 2.0);
    }
  }
}

void max_m1(std::vector<Configuration>& out, double e, int b, int j, bool restrict) {
  const double top = 1.0 - e;
  for (int l1 = 0; l1 <= b; ++l1) {
    for (int l2 = 0; l1 + l2 <= b; ++l2) {
      for (int fam = 1; fam <= 3; ++fam) {
        const int extra = fam == 1 ? 2 : (fam == 2 ? 1 : 0);
        const int r = b - l1 - l2 - extra;
        if (r < 0) continue;
        Builder g("max-M1-" + std::to_string(fam), l1, l2);
        auto d = g.qv("delta", 0, top), a = g.pv("alpha", 0, top), be = g.pv("beta", 0, top),
             et = g.qv("eta", 0, top);
        g.seg(l1, k(0), d).seg(l2, a, k(0)).seg(r, be, et);
        if (fam == 1) g.seg(1, k(0), k(top)).seg(1, k(top), k(0));
        if (fam == 2) g.seg(1, k(0), k(top));
        push(out, g.take(), restrict, b - 2, b, j, true, true, top);
      }
    }
  }
}

void max_m3(std::vector<Configuration>& out, double e, int b, int j, bool restrict) {
  const double top = 1.0 - e;
  for (int l1 = 0; l1 <= b - 1; ++l1) {
    for (int l2 = 0; l1 + l2 <= b - 1; ++l2) {
      Builder g("max-M3", l1, l2);
      auto d = g.qv("delta", 0, 1), a = g.pv("alpha", 0, 1), be = g.pv("beta", 0, 1), et = g.qv("eta", 0, 1);
      g.seg(1, k(top), k(top)).seg(l1, k(0), d).seg(l2, a, k(0)).seg(b - l1 - l2 - 1, be, et);
      push(out, g.take(), restrict, b - 2, b, j, true, true, 2.0);
    }
  }
}

void max_m4(std::vector<Configuration>& out, double e, int b, int j, bool restrict) {
  const double top = 1.0 - e;
  const int limit = b - 1;
  {
    Builder g("max-M4-1", 0, 0);
    auto ga = g.pv("gamma", top, 1), a = g.pv("alpha", 0, 1), d = g.qv("delta", 0, 1), z = g.qv("zeta", top, 1);
    g.seg(1, ga, k(0)).seg(b - 2, a, d).seg(1, k(0), z);
    push(out, g.take(), restrict, limit, b, j, true, true, top);
  }
  for (int l1 = 1; l1 <= b - 2; ++l1) {
    for (double zeta : {top, 1.0}) {
      Builder g("max-M4-2", l1, 0);
      auto ga = g.pv("gamma", top, 1), a = g.pv("alpha", 0, 1), d = g.qv("delta", 0, 1), et = g.qv("eta", 0, 1);
      g.seg(1, ga, k(0)).seg(l1, k(0), d).seg(b - l1 - 2, a, et).seg(1, k(0), k(zeta)).choice(zeta);
      push(out, g.take(), restrict, limit, b, j, true, true, top);
    }
  }
  for (int l1 = 1; l1 <= b - 3; ++l1) {
    for (int l2 = 1; l1 + l2 <= b - 2; ++l2) {
      for (double gamma : {top, 1.0}) {
        for (double zeta : {top, 1.0}) {
          Builder g("max-M4-3", l1, l2);
          auto a = g.pv("alpha", 0, 1), be = g.pv("beta", 0, 1), d = g.qv("delta", 0, 1), et = g.qv("eta", 0, 1);
          g.seg(1, k(gamma), k(0)).seg(l1, k(0), d).seg(l2, a, k(0)).seg(b - l1 - l2 - 2, be, et);
          g.seg(1, k(0), k(zeta)).choice(gamma).choice(zeta);
          push(out, g.take(), restrict, limit, b, j, true, true, top);
        }
      }
    }
  }
}

void min_m1(std::vector<Configuration>& out, double e, int b) {
  for (int l1 = 0; l1 <= b; ++l1) {
    for (int l2 = 0; l1 + l2 <= b; ++l2) {
      Builder g("min-M1", l1, l2);
      auto d = g.qv("delta", e, 1), a = g.pv("alpha", e, 1), be = g.pv("beta", e, 1), et = g.qv("eta", e, 1);
      g.seg(l1, k(e), d).seg(l2, a, k(e)).seg(b - l1 - l2, be, et);
      out.push_back(g.take());
    }
  }
}

void min_m2(std::vector<Configuration>& out, double e, int b, int j, bool restrict) {
  for (int l1 = 1; l1 <= b; ++l1) {
    Builder g("min-M2-1", l1, 0);
    auto a = g.pv("alpha", 0, e), be = g.pv("beta", 0, 1), et = g.qv("eta", e, 1);
    g.seg(l1, a, et).seg(b - l1, be, k(e));
    out.push_back(g.take());
  }
  for (int l1 = 0; l1 <= b - 1; ++l1) {
    Builder g("min-M2-2", l1, 0);
    auto a = g.pv("alpha", 0, 1), be = g.pv("beta", 0, 1), z = g.qv("zeta", e, 1), et = g.qv("eta", e, 1);
    g.seg(1, k(e), z).seg(l1, a, et).seg(b - l1 - 1, be, k(e));
    out.push_back(g.take());
  }
  for (int l1 = 1; l1 <= b; ++l1) {
    for (int l2 = 0; l1 + l2 <= b; ++l2) {
      Builder g("min-M2-3", l1, l2);
      auto a = g.pv("alpha", 0, 1), be = g.pv("beta", 0, 1), d = g.qv("delta", e, 1), et = g.qv("eta", e, 1);
      g.seg(l1, k(0), d).seg(l2, a, et).seg(b - l1 - l2, be, k(e));
      push(out, g.take(), restrict, b - 1, b, j, true, false, 2.0);
    }
  }
}

void min_m3(std::vector<Configuration>& out, double e, int b, int j, bool restrict) {
  const int limit = b - 1;
  for (int l1 = 0; l1 <= b - 1; ++l1) {
    for (int l2 = 0; l1 + l2 <= b - 1; ++l2) {
      const int r = b - l1 - l2 - 1;
      {
        // The designated coordinate shares beta/eta with the r-block.
        Builder g("min-M3-1", l1, l2);
        auto a = g.pv("alpha", 0, 1), be = g.pv("beta", 0, e), d = g.qv("delta", 0, 1), et = g.qv("eta", 0, e);
        g.seg(l1, k(0), d).seg(l2, a, k(0)).seg(r + 1, be, et);
        push(out, g.take(), restrict, limit, b, j, true, true, 2.0);
      }
      for (double zeta : {0.0, e}) {
        Builder g(zeta == 0.0 ? "min-M3-2" : "min-M3-3", l1, l2);
        auto ga = g.pv("gamma", 0, e), a = g.pv("alpha", 0, 1), be = g.pv("beta", 0, 1), d = g.qv("delta", 0, 1),
             et = g.qv("eta", 0, 1);
        g.seg(1, ga, k(zeta)).seg(l1, k(0), d).seg(l2, a, k(0)).seg(r, be, et);
        push(out, g.take(), restrict, limit, b, j, true, true, 2.0);
      }
    }
  }
}

}  // namespace

bool zero_count_allowed(int zeros, int limit, int b, int j) { return zeros == limit || zeros <= b - j; }

std::vector<Configuration> global_max_candidates(int b, int j, bool zero_restriction) {
  static_cast<void>(PsiParams(b, j));
  std::vector<Configuration> out;
  global_family(out, b, j, zero_restriction);
  return out;
}

bool selector_is_relaxed(PartitionKind kind, MSelector which) {
  if (kind == PartitionKind::MaxValue) return which == MSelector::M2;
  return which == MSelector::M3 || which == MSelector::M4;
}

std::vector<Configuration> enumerate_candidates(const PartitionSpec& spec, MSelector which, int b, int j,
                                                bool zero_restriction) {
  static_cast<void>(PsiParams(b, j));
  spec.validate(b, j);
  const double e = spec.epsilon;
  std::vector<Configuration> out;
  if (spec.kind == PartitionKind::MaxValue) {
    switch (which) {
      case MSelector::M1: max_m1(out, e, b, j, zero_restriction); break;
      case MSelector::M2: global_family(out, b, j, zero_restriction); break;
      case MSelector::M3: max_m3(out, e, b, j, zero_restriction); break;
      case MSelector::M4: max_m4(out, e, b, j, zero_restriction); break;
    }
  } else {
    switch (which) {
      case MSelector::M1: min_m1(out, e, b); break;
      case MSelector::M2: min_m2(out, e, b, j, zero_restriction); break;
      case MSelector::M3: min_m3(out, e, b, j, zero_restriction); break;
      case MSelector::M4: global_family(out, b, j, zero_restriction); break;
    }
  }
  return out;
}

}  // namespace hashbound
