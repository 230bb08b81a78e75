#include "plrot/plmap.hpp"

#include <algorithm>
#include <sstream>

namespace plrot {

FieldElem Piece::operator()(const FieldElem& x) const {
  return power_alpha(x.spec(), k) * x + b;
}

PLMap::PLMap(FieldElem lo, FieldElem hi, std::vector<Piece> pieces)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_)) throw PLMapError("empty or reversed domain");
  if (pieces.empty()) throw PLMapError("no pieces");
  if (pieces.front().left != lo_) throw PLMapError("first piece must start at the domain's left end");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& pc = pieces[i];
    if (!(pc.left.spec() == lo_.spec()) || !(pc.b.spec() == lo_.spec()))
      throw PLMapError("piece over a different alpha");
    FieldElem end = i + 1 < pieces.size() ? pieces[i + 1].left : hi_;
    if (!(pc.left < end)) throw PLMapError("zero-length or unsorted piece at " + pc.left.to_string());
    if (i + 1 < pieces.size() && pc(end) != pieces[i + 1](end))
      throw PLMapError("discontinuity at " + end.to_string());
  }
  pieces_.reserve(pieces.size());
  for (auto& pc : pieces) {
    if (!pieces_.empty() && pieces_.back().k == pc.k && pieces_.back().b == pc.b) continue;
    pieces_.push_back(std::move(pc));
  }
}

PLMap PLMap::identity(const FieldElem& lo, const FieldElem& hi) {
  return affine(lo, hi, 0, FieldElem(lo.spec()));
}

PLMap PLMap::affine(const FieldElem& lo, const FieldElem& hi, long k, const FieldElem& b) {
  return PLMap(lo, hi, {Piece{lo, k, b}});
}

PLMap PLMap::translation(const FieldElem& lo, const FieldElem& hi, const FieldElem& shift) {
  return affine(lo, hi, 0, shift);
}

FieldElem PLMap::piece_end(std::size_t i) const {
  return i + 1 < pieces_.size() ? pieces_[i + 1].left : hi_;
}

std::size_t PLMap::piece_index(const FieldElem& x) const {
  if (x < lo_ || x > hi_)
    throw PLMapError("point " + x.to_string() + " outside domain [" + lo_.to_string() + ", " +
                     hi_.to_string() + "]");
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const FieldElem& v, const Piece& pc) { return v < pc.left; });
  return static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
}

FieldElem PLMap::operator()(const FieldElem& x) const { return pieces_[piece_index(x)](x); }

std::vector<FieldElem> PLMap::breakpoints() const {
  std::vector<FieldElem> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].left);
  return out;
}

PLMap PLMap::restrict(const FieldElem& lo, const FieldElem& hi) const {
  if (lo < lo_ || hi > hi_ || !(lo < hi)) throw PLMapError("restriction outside domain");
  std::size_t first = piece_index(lo);
  std::vector<Piece> out;
  for (std::size_t i = first; i < pieces_.size() && pieces_[i].left < hi; ++i) {
    out.push_back(pieces_[i]);
  }
  out.front().left = lo;
  return PLMap(lo, hi, std::move(out));
}

PLMap PLMap::shifted(const FieldElem& s) const {
  std::vector<Piece> out;
  out.reserve(pieces_.size());
  for (const auto& pc : pieces_) {
    out.push_back(Piece{pc.left + s, pc.k, pc.b + s - power_alpha(spec(), pc.k) * s});
  }
  return PLMap(lo_ + s, hi_ + s, std::move(out));
}

FieldElem evaluate(const PLMap& f, const FieldElem& x) { return f(x); }

PLMap compose(const PLMap& f, const PLMap& g) {
  if (g.image_lo() != f.lo() || g.image_hi() != f.hi())
    throw PLMapError("compose: image of inner map does not match outer domain");
  const auto& fp = f.pieces();
  const auto& gp = g.pieces();
  const SlopeSpec& spec = f.spec();
  std::vector<Piece> out;
  out.reserve(fp.size() + gp.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < gp.size(); ++i) {
    const Piece& inner = gp[i];
    FieldElem t = inner.left;
    FieldElem img_t = inner(t);
    FieldElem img_end = inner(g.piece_end(i));
    while (j + 1 < fp.size() && fp[j + 1].left <= img_t) ++j;
    for (;;) {
      const Piece& outer = fp[j];
      out.push_back(Piece{t, outer.k + inner.k, power_alpha(spec, outer.k) * inner.b + outer.b});
      if (j + 1 < fp.size() && fp[j + 1].left < img_end) {
        t = (fp[j + 1].left - inner.b) * power_alpha(spec, -inner.k);
        ++j;
      } else {
        break;
      }
    }
  }
  return PLMap(g.lo(), g.hi(), std::move(out));
}

PLMap invert(const PLMap& f) {
  const SlopeSpec& spec = f.spec();
  std::vector<Piece> out;
  out.reserve(f.size());
  for (const auto& pc : f.pieces()) {
    FieldElem inv_slope = power_alpha(spec, -pc.k);
    out.push_back(Piece{pc(pc.left), -pc.k, -(inv_slope * pc.b)});
  }
  return PLMap(f.image_lo(), f.image_hi(), std::move(out));
}

PLMap concat(const PLMap& left, const PLMap& right) {
  if (left.hi() != right.lo()) throw PLMapError("concat: domains are not adjacent");
  if (left.image_hi() != right.image_lo())
    throw PLMapError("concat: value mismatch at " + left.hi().to_string());
  std::vector<Piece> out = left.pieces();
  out.insert(out.end(), right.pieces().begin(), right.pieces().end());
  return PLMap(left.lo(), right.hi(), std::move(out));
}

JumpValue one_sided_derivatives(const PLMap& f, const FieldElem& x) {
  std::size_t i = f.piece_index(x);
  JumpValue jv{x, f.pieces()[i].k, f.pieces()[i].k, 0, false};
  if (x == f.lo() || x == f.hi()) {
    jv.boundary = true;
    return jv;
  }
  if (i > 0 && f.pieces()[i].left == x) jv.left_exponent = f.pieces()[i - 1].k;
  jv.sigma_exponent = jv.right_exponent - jv.left_exponent;
  return jv;
}

bool is_in_F_alpha(const PLMap& f) {
  const SlopeSpec& s = f.spec();
  FieldElem zero(s), one(s, 1L);
  if (f.lo() != zero || f.hi() != one) return false;
  if (f.image_lo() != zero || f.image_hi() != one) return false;
  for (const auto& pc : f.pieces()) {
    if (!in_ring_A(pc.left) || !in_ring_A(pc.b)) return false;
  }
  return true;
}

std::vector<FixedPoint> fixed_points(const PLMap& f) {
  const SlopeSpec& s = f.spec();
  std::vector<std::pair<FieldElem, FieldElem>> raw;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Piece& pc = f.pieces()[i];
    FieldElem end = f.piece_end(i);
    if (pc.k == 0) {
      if (pc.b.is_zero()) raw.emplace_back(pc.left, end);
      continue;
    }
    FieldElem x = pc.b / (FieldElem(s, 1L) - power_alpha(s, pc.k));
    if (x >= pc.left && x <= end) raw.emplace_back(x, x);
  }
  std::vector<std::pair<FieldElem, FieldElem>> merged;
  for (auto& r : raw) {
    if (!merged.empty() && r.first <= merged.back().second) {
      if (r.second > merged.back().second) merged.back().second = r.second;
    } else {
      merged.push_back(r);
    }
  }
  std::vector<FixedPoint> out;
  for (auto& [lo, hi] : merged) {
    out.push_back(FixedPoint{lo, hi, one_sided_derivatives(f, lo), one_sided_derivatives(f, hi)});
  }
  return out;
}

bool commutes_on(const PLMap& f, const PLMap& g, const FieldElem& lo, const FieldElem& hi) {
  PLMap fg = compose(f, g);
  PLMap gf = compose(g, f);
  return fg.restrict(lo, hi) == gf.restrict(lo, hi);
}

long variation_log_slope(const PLMap& f) {
  long total = 0;
  for (std::size_t i = 1; i < f.size(); ++i) total += std::labs(f.pieces()[i].k - f.pieces()[i - 1].k);
  return total;
}

std::string pretty(const PLMap& f) {
  std::ostringstream os;
  os << "PL map on [" << f.lo().to_string() << ", " << f.hi().to_string() << "], " << f.size()
     << " piece(s)\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Piece& pc = f.pieces()[i];
    os << "  [" << pc.left.to_string() << ", " << f.piece_end(i).to_string() << "]  x -> a^"
       << pc.k << " x + (" << pc.b.to_string() << ")\n";
  }
  return os.str();
}

}  // namespace plrot
