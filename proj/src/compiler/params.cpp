#include <algorithm>
#include <sstream>

#include "tagpcp/compiler.hpp"

namespace tagpcp::compiler {

const char* kind_name(ObjectKind k) {
  switch (k) {
    case ObjectKind::One: return "1";
    case ObjectKind::Zero: return "0";
    case ObjectKind::Eps: return "e";
    case ObjectKind::EpsPrime: return "e'";
    case ObjectKind::OnePrime: return "1'";
  }
  return "?";
}

std::optional<ObjectKind> kind_from_name(std::string_view s) {
  for (ObjectKind k : kAllKinds)
    if (s == kind_name(k)) return k;
  return std::nullopt;
}

std::string kinds_to_string(const std::vector<ObjectKind>& ks) {
  std::string out;
  for (std::size_t i = 0; i < ks.size();) {
    std::size_t j = i;
    while (j < ks.size() && ks[j] == ks[i]) ++j;
    if (!out.empty()) out += ",";
    out += kind_name(ks[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

Params Params::at(std::uint64_t p, std::uint64_t x, std::uint64_t r) {
  Params pr;
  pr.p = p;
  pr.x = x;
  pr.r = r;
  if (p % 3 != 2)
    fail(ErrorCode::UnsupportedArity,
         "program arity " + std::to_string(p) + " is not 2 mod 3");
  pr.k = (p - 2) / 3;
  pr.program_length = 3 * x - 2;
  pr.q = p ? pr.program_length / p : 0;
  pr.z1 = 3 * x * x + x;
  pr.z2 = 3 * x * x - 2 * x;
  pr.beta = pr.z1 * (3 * x - 2);
  pr.u_length = (3 * x + 1) * pr.beta - 3 * x;
  pr.validate();
  return pr;
}

void Params::validate() const {
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::InvalidArgument, "x=" + std::to_string(x) + ": " + why);
  };
  if (p % 3 != 2) fail(ErrorCode::UnsupportedArity, "program arity is not 2 mod 3");
  if (x % 2 != 0) bad("x must be even");
  if (x <= 14) bad("x must exceed 14");
  if (2 * r + 14 >= x) bad("longest appendant r=" + std::to_string(r) + " needs r < x/2 - 7");
  if ((3 * x - 2) % p != 0) bad("program arity " + std::to_string(p) + " must divide 3x-2");
  if (q * (3 * k + 2) != 3 * x - 2) bad("q(3k+2) != 3x-2");
  if (z1 != 3 * x * x + x || z2 != 3 * x * x - 2 * x) bad("inconsistent shift changes");
  if (beta != z1 * (3 * x - 2)) bad("inconsistent beta");
  if ((z2 * (3 * x + 1)) % beta != 0) bad("z2(3x+1) is not a multiple of beta");
  if (u_length != (3 * x + 1) * beta - 3 * x) bad("inconsistent |u|");
}

std::uint64_t Params::object_length(ObjectKind k) const {
  switch (k) {
    case ObjectKind::One:
    case ObjectKind::Zero: return (x + 1) * u_length + 2 * x;
    case ObjectKind::Eps: return u_length + 3 * x;
    case ObjectKind::EpsPrime: return x * u_length + 2 * x;
    case ObjectKind::OnePrime: return x * u_length + 2 * x;
  }
  return 0;
}

std::uint64_t Params::object_shift_change(ObjectKind k) const {
  return tagcore::shift_change(object_length(k), beta);
}

Params select_params(std::uint64_t p, std::uint64_t r, std::optional<std::uint64_t> x_override,
                     std::uint64_t min_x) {
  if (p % 3 != 2)
    fail(ErrorCode::UnsupportedArity,
         "program arity " + std::to_string(p) + " is not 2 mod 3 (replicate or pad it)");
  if (x_override) return Params::at(p, *x_override, r);
  std::uint64_t x = std::max<std::uint64_t>(16, 2 * r + 16);
  x = std::max(x, min_x + (min_x % 2));
  for (std::uint64_t tries = 0; tries <= 2 * p; ++tries, x += 2)
    if ((3 * x - 2) % p == 0) return Params::at(p, x, r);
  fail(ErrorCode::InvalidArgument, "no feasible x found");
}

Params select_params(const cyclic::Program& c, std::optional<std::uint64_t> x_override,
                     std::uint64_t min_x) {
  return select_params(c.size(), c.max_length(), x_override, min_x);
}

ObjectTemplate make_template(ObjectKind kind, const Params& params) {
  const std::uint64_t x = params.x;
  ObjectTemplate t;
  t.kind = kind;
  auto b = [&](std::uint64_t n) { t.skeleton.push_back({false, n}); };
  auto u = [&](std::uint64_t n) { t.skeleton.push_back({true, n}); };
  switch (kind) {
    case ObjectKind::Eps:
      b(2), u(1), b(3 * x - 2);
      break;
    case ObjectKind::Zero:
    case ObjectKind::EpsPrime:
      b(4), u(1), b(2), u(kind == ObjectKind::Zero ? x - 1 : x - 2), b(2), u(1), b(2 * x - 8);
      break;
    case ObjectKind::One:
    case ObjectKind::OnePrime:
      b(10);
      for (std::uint64_t i = 0; i < x / 2 - 7; ++i) u(1), b(2);
      u(kind == ObjectKind::One ? x / 2 + 7 : x / 2 + 6);
      b(2), u(1), b(x + 2);
      break;
  }
  for (const auto& run : t.skeleton) {
    if (run.u) {
      t.u_slots += run.count;
      t.expanded_length += run.count * params.u_length;
    } else {
      t.b_count += run.count;
      t.expanded_length += run.count;
    }
  }
  return t;
}

std::string ObjectTemplate::skeleton_text() const {
  std::string s;
  for (const auto& run : skeleton) s.append(run.count, run.u ? 'U' : 'b');
  return s;
}

std::string read_pattern(ObjectKind kind, std::uint64_t x, PatternForm form) {
  if (x <= 14 || x % 2) fail(ErrorCode::InvalidArgument, "pattern needs even x > 14");
  std::string s;
  switch (kind) {
    case ObjectKind::Eps:
      s = "bbc" + std::string(3 * x - 2, 'b');
      break;
    case ObjectKind::Zero:
    case ObjectKind::EpsPrime:
      s = "bbbbcbb" + std::string(kind == ObjectKind::Zero ? x - 1 : x - 2, 'c') + "bbc" +
          std::string(2 * x - 8, 'b');
      break;
    case ObjectKind::One:
    case ObjectKind::OnePrime: {
      s = std::string(10, 'b');
      for (std::uint64_t i = 0; i < x / 2 - 7; ++i) s += "cbb";
      s += std::string(kind == ObjectKind::One ? x / 2 + 7 : x / 2 + 6, 'c');
      s += "bbc" + std::string(x + 2, 'b');
      break;
    }
    default:
      fail(ErrorCode::InvalidArgument, "unknown object kind");
  }
  if (form == PatternForm::DropLeadingB) s.erase(0, 1);
  if (form == PatternForm::DropTrailingB) s.pop_back();
  return s;
}

std::uint64_t schedule_shift(ObjectKind kind, std::uint64_t z, std::uint64_t slot,
                             const Params& params) {
  const std::int64_t x = static_cast<std::int64_t>(params.x);
  const std::int64_t beta = static_cast<std::int64_t>(params.beta);
  const std::int64_t i = static_cast<std::int64_t>(slot);
  std::int64_t off = 0;
  auto out_of_range = [&] {
    fail(ErrorCode::OutOfRange, std::string("slot ") + std::to_string(slot) + " of object " +
                                    kind_name(kind));
  };
  switch (kind) {
    case ObjectKind::Eps:
      if (i != 0) out_of_range();
      off = -2;
      break;
    case ObjectKind::Zero:
      if (i == 0) off = -4;
      else if (i < x) off = 3 * x * i - 6;
      else if (i == x) off = 3 * x * x - 8;
      else out_of_range();
      break;
    case ObjectKind::EpsPrime:
      if (i == 0) off = -4;
      else if (i < x - 1) off = 3 * x * i - 6;
      else if (i == x - 1) off = 3 * x * (x - 1) - 8;
      else out_of_range();
      break;
    case ObjectKind::One:
      if (i < x / 2 - 7) off = i * (3 * x - 2) - 10;
      else if (i < x) off = 3 * x * i - x + 4;
      else if (i == x) off = 3 * x * x - x + 2;
      else out_of_range();
      break;
    case ObjectKind::OnePrime:
      if (i < x / 2 - 7) off = i * (3 * x - 2) - 10;
      else if (i < x - 1) off = 3 * x * i - x + 4;
      else if (i == x - 1) off = 3 * x * (x - 1) - x + 2;
      else out_of_range();
      break;
  }
  std::int64_t s = (static_cast<std::int64_t>(z) + off) % beta;
  if (s < 0) s += beta;
  return static_cast<std::uint64_t>(s);
}

std::vector<ObjectKind> encode_appendant(std::string_view alpha, const Params& params,
                                         std::optional<std::uint64_t> prime_at) {
  if (alpha.size() > params.r)
    fail(ErrorCode::InvalidArgument, "appendant longer than r=" + std::to_string(params.r));
  const std::uint64_t x = params.x;
  std::vector<ObjectKind> out;
  for (char ch : alpha) {
    if (ch != '0' && ch != '1') fail(ErrorCode::MalformedDataword, "appendant is not binary");
    out.push_back(ch == '1' ? ObjectKind::One : ObjectKind::Zero);
  }
  out.insert(out.end(), x - alpha.size() + 1, ObjectKind::Eps);
  if (prime_at) {
    if (*prime_at > x) fail(ErrorCode::OutOfRange, "prime position must be at most x");
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(*prime_at), ObjectKind::EpsPrime);
    out.pop_back();
  }
  return out;
}

ShiftSet make_shift_set(const Params& params) {
  ShiftSet s;
  s.m_of.assign(params.beta, -1);
  s.d_of.assign(params.beta, -1);
  for (std::uint64_t m = 0; m < 3 * params.x - 2; ++m) {
    for (std::uint64_t d = 0; d < 3 * params.x + 1; ++d) {
      std::uint64_t z = (params.z1 * m + params.z2 * d) % params.beta;
      ++s.pairs;
      if (s.m_of[z] < 0) {
        s.m_of[z] = static_cast<std::int32_t>(m);
        s.d_of[z] = static_cast<std::int32_t>(d);
        s.shifts.push_back(z);
      } else if (s.m_of[z] != static_cast<std::int32_t>(m)) {
        ++s.cross_m_collisions;
      }
    }
  }
  std::sort(s.shifts.begin(), s.shifts.end());
  return s;
}

}  // namespace tagpcp::compiler
