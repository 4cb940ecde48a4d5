#include "markovflb/conversion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "markovflb/numeric.hpp"

namespace markovflb {

Rat::Rat(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw DomainError("Rat: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rat Rat::from_decimal_string(const std::string& s) {
  std::size_t dot = s.find('.');
  if (dot == std::string::npos) return Rat(std::stoll(s), 1);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  long long den = 1;
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Rat(std::stoll(digits), den);
}

Rat Rat::operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
Rat Rat::operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
Rat Rat::operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw DomainError("Rat: division by zero");
  return Rat(num * o.den, den * o.num);
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw DomainError("FiniteAbelianGroup: no factors");
  for (int q : moduli_) {
    if (q < 1) throw DomainError("FiniteAbelianGroup: modulus must be positive");
    size_ *= q;
  }
  if (size_ > 64) throw DomainError("FiniteAbelianGroup: order above 64 unsupported");
}

int FiniteAbelianGroup::add(int a, int b) const {
  int out = 0, place = 1;
  for (int q : moduli_) {
    int da = a % q, db = b % q;
    a /= q;
    b /= q;
    out += ((da + db) % q) * place;
    place *= q;
  }
  return out;
}

int FiniteAbelianGroup::neg(int a) const {
  int out = 0, place = 1;
  for (int q : moduli_) {
    int da = a % q;
    a /= q;
    out += ((q - da) % q) * place;
    place *= q;
  }
  return out;
}

RegularChannel::RegularChannel(FiniteAbelianGroup group, std::vector<std::vector<int>> perms,
                               std::vector<double> base, std::vector<Rat> base_exact)
    : group_(std::move(group)),
      perms_(std::move(perms)),
      base_(std::move(base)),
      base_exact_(std::move(base_exact)) {
  const int na = group_.size();
  if (static_cast<int>(perms_.size()) != na) {
    throw NotRegular("RegularChannel: one permutation per group element required");
  }
  const int nb = static_cast<int>(perms_[0].size());
  if (static_cast<int>(base_.size()) != nb) {
    throw DomainError("RegularChannel: base distribution size mismatch");
  }
  double total = 0.0;
  for (double v : base_) {
    if (!(v >= 0.0)) throw DomainError("RegularChannel: negative base probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12 * nb) {
    throw DomainError("RegularChannel: base distribution not normalized");
  }
  // Each pi_a must be a bijection of the output alphabet.
  for (int a = 0; a < na; ++a) {
    if (static_cast<int>(perms_[a].size()) != nb) {
      throw NotRegular("RegularChannel: ragged permutation table");
    }
    std::vector<char> seen(nb, 0);
    for (int b = 0; b < nb; ++b) {
      int img = perms_[a][b];
      if (img < 0 || img >= nb || seen[img]) {
        throw NotRegular("RegularChannel: table row is not a bijection");
      }
      seen[img] = 1;
    }
  }
  // Homomorphism: pi_{a+a'} = pi_a o pi_{a'}.
  for (int a = 0; a < na; ++a)
    for (int ap = 0; ap < na; ++ap) {
      int sum = group_.add(a, ap);
      for (int b = 0; b < nb; ++b) {
        if (perms_[sum][b] != perms_[a][perms_[ap][b]]) {
          throw NotRegular("RegularChannel: permutations do not form a homomorphism");
        }
      }
    }
  if (!base_exact_.empty() && base_exact_.size() != base_.size()) {
    throw DomainError("RegularChannel: exact base size mismatch");
  }
}

OrbitDecomposition decompose(const RegularChannel& ch) {
  const int na = ch.group().size();
  const int nb = ch.out_size();
  OrbitDecomposition d;
  d.orbit_of.assign(nb, -1);
  for (int b = 0; b < nb; ++b) {
    if (d.orbit_of[b] >= 0) continue;
    std::vector<int> members;
    for (int a = 0; a < na; ++a) members.push_back(ch.perm(a, b));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    int idx = static_cast<int>(d.orbits.size());
    for (int m : members) d.orbit_of[m] = idx;
    d.representative.push_back(members.front());
    d.orbits.push_back(std::move(members));
  }
  const int ny = static_cast<int>(d.orbits.size());
  d.stabilizer.resize(ny);
  d.coset_rep.resize(ny);
  d.iota.assign(ny, std::vector<int>(nb, -1));
  d.iota_inv.assign(ny, std::vector<int>(na, -1));
  for (int y = 0; y < ny; ++y) {
    int base = d.representative[y];
    for (int a = 0; a < na; ++a) {
      if (ch.perm(a, base) == base) d.stabilizer[y].push_back(a);
    }
    // Orbit-stabilizer product identity.
    if (d.stabilizer[y].size() * d.orbits[y].size() != static_cast<std::size_t>(na)) {
      throw NotRegular("decompose: orbit-stabilizer identity fails");
    }
    // Coset representative: lexicographically smallest member of a + Stb.
    d.coset_rep[y].assign(na, -1);
    for (int a = 0; a < na; ++a) {
      int best = -1;
      for (int s : d.stabilizer[y]) {
        int member = ch.group().add(a, s);
        if (best < 0 || member < best) best = member;
      }
      d.coset_rep[y][a] = best;
    }
    // iota: pi_{-abar}(0_y) <-> abar over coset representatives.
    for (int a = 0; a < na; ++a) {
      if (d.coset_rep[y][a] != a) continue;  // not a representative
      int member = ch.perm(ch.group().neg(a), base);
      if (d.iota[y][member] >= 0) throw NotRegular("decompose: iota not injective");
      d.iota[y][member] = a;
      d.iota_inv[y][a] = member;
    }
    for (int m : d.orbits[y]) {
      if (d.iota[y][m] < 0) throw NotRegular("decompose: iota not surjective on the orbit");
    }
  }
  return d;
}

std::vector<Rat> to_conditional_additive_exact(const RegularChannel& ch) {
  if (!ch.has_exact_base()) throw DomainError("exact conversion needs an exact base");
  OrbitDecomposition d = decompose(ch);
  const int na = ch.group().size();
  const int ny = static_cast<int>(d.orbits.size());
  std::vector<Rat> joint(static_cast<std::size_t>(na) * ny, Rat(0, 1));
  for (int y = 0; y < ny; ++y) {
    Rat stab_size(static_cast<long long>(d.stabilizer[y].size()), 1);
    for (int x = 0; x < na; ++x) {
      int rep = d.coset_rep[y][x];
      int b = d.iota_inv[y][rep];
      joint[static_cast<std::size_t>(x) * ny + y] = ch.base_exact(b) / stab_size;
    }
  }
  return joint;
}

JointDistribution to_conditional_additive(const RegularChannel& ch) {
  OrbitDecomposition d = decompose(ch);
  const int na = ch.group().size();
  const int ny = static_cast<int>(d.orbits.size());
  std::vector<double> joint(static_cast<std::size_t>(na) * ny, 0.0);
  if (ch.has_exact_base()) {
    std::vector<Rat> exact = to_conditional_additive_exact(ch);
    for (std::size_t i = 0; i < joint.size(); ++i) joint[i] = exact[i].to_double();
  } else {
    for (int y = 0; y < ny; ++y) {
      double stab = static_cast<double>(d.stabilizer[y].size());
      for (int x = 0; x < na; ++x) {
        int b = d.iota_inv[y][d.coset_rep[y][x]];
        joint[static_cast<std::size_t>(x) * ny + y] = ch.base(b) / stab;
      }
    }
  }
  return JointDistribution(na, ny, std::move(joint));
}

MarkovSource convert_markov_noise(const RegularChannel& ch, const StochasticMatrix& w_tilde,
                                  const ProbVector& q) {
  const int nb = ch.out_size();
  if (static_cast<int>(w_tilde.size()) != nb || static_cast<int>(q.size()) != nb) {
    throw DomainError("convert_markov_noise: noise chain must live on the output alphabet");
  }
  if (!w_tilde.matrix().irreducible()) {
    throw NotIrreducible("convert_markov_noise: noise chain not irreducible");
  }
  OrbitDecomposition d = decompose(ch);
  const int na = ch.group().size();
  const int ny = static_cast<int>(d.orbits.size());
  auto b_of = [&](int x, int y) { return d.iota_inv[y][d.coset_rep[y][x]]; };

  Matrix pair(static_cast<std::size_t>(na) * ny);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < ny; ++y)
      for (int xp = 0; xp < na; ++xp)
        for (int yp = 0; yp < ny; ++yp) {
          double w = w_tilde.at(b_of(x, y), b_of(xp, yp));
          pair.at(static_cast<std::size_t>(x) * ny + y,
                  static_cast<std::size_t>(xp) * ny + yp) =
              w / static_cast<double>(d.stabilizer[y].size());
        }
  std::vector<double> initial(static_cast<std::size_t>(na) * ny, 0.0);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < ny; ++y) {
      initial[static_cast<std::size_t>(x) * ny + y] =
          q[b_of(x, y)] / static_cast<double>(d.stabilizer[y].size());
    }
  return MarkovSource(PairTransitionMatrix(na, ny, std::move(pair)), ProbVector(initial));
}

RegularChannel make_bes(const std::string& p, const std::string& p_prime) {
  Rat rp = Rat::from_decimal_string(p);
  Rat rpp = Rat::from_decimal_string(p_prime);
  Rat one(1, 1);
  Rat r0 = one - rp - rpp;
  for (const Rat& r : {r0, rp, rpp}) {
    if (r.to_double() < 0.0 || r.to_double() > 1.0) {
      throw DomainError("bes: probabilities outside [0,1]");
    }
  }
  // Outputs 0, 1, ?; the nonzero input swaps 0 and 1 and fixes ?.
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}};
  return RegularChannel(FiniteAbelianGroup({2}), perms,
                        {r0.to_double(), rp.to_double(), rpp.to_double()}, {r0, rp, rpp});
}

RegularChannel make_bsc(const std::string& p) {
  Rat rp = Rat::from_decimal_string(p);
  Rat r0 = Rat(1, 1) - rp;
  if (rp.to_double() < 0.0 || rp.to_double() > 1.0) {
    throw DomainError("bsc: crossover outside [0,1]");
  }
  std::vector<std::vector<int>> perms = {{0, 1}, {1, 0}};
  return RegularChannel(FiniteAbelianGroup({2}), perms, {r0.to_double(), rp.to_double()},
                        {r0, rp});
}

MarkovSource make_gilbert_elliott(double q0, double q1, double p0, double p1) {
  for (double v : {q0, q1, p0, p1}) {
    if (!(v > 0.0 && v < 1.0)) {
      throw DomainError("gilbert-elliott: parameters must lie in (0,1)");
    }
  }
  Matrix pair(4);  // states x * 2 + y on {0,1} x {0,1}
  double stay[2] = {1.0 - q0, 1.0 - q1};
  double flip[2] = {q0, q1};
  double noise[2] = {p0, p1};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int xp = 0; xp < 2; ++xp)
        for (int yp = 0; yp < 2; ++yp) {
          double wy = (y == yp) ? stay[yp] : flip[yp];
          double wx = (x == 1) ? noise[y] : 1.0 - noise[y];
          pair.at(x * 2 + y, xp * 2 + yp) = wy * wx;
        }
  return MarkovSource::with_stationary_initial(PairTransitionMatrix(2, 2, std::move(pair)));
}

MarkovSource make_symmetric_additive(const StochasticMatrix& q_chain, const ProbVector& p_z) {
  const std::size_t m = q_chain.size();
  if (p_z.size() != m) throw DomainError("symmetric-additive: size mismatch");
  Matrix pair(m * m);  // states x * m + y on Z_m x Z_m
  auto sub = [m](std::size_t a, std::size_t b) { return (a + m - b) % m; };
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t xp = 0; xp < m; ++xp)
        for (std::size_t yp = 0; yp < m; ++yp) {
          // Z-chain P(z|z') = P_Z(z - z') driven by z = x - y.
          double pz = p_z[sub(sub(x, y), sub(xp, yp))];
          pair.at(x * m + y, xp * m + yp) = q_chain.at(y, yp) * pz;
        }
  return MarkovSource::with_stationary_initial(
      PairTransitionMatrix(m, m, std::move(pair)));
}

PresetResult make_preset(const std::string& spec) {
  std::string name = spec;
  std::string params;
  if (auto pos = spec.find(':'); pos != std::string::npos) {
    name = spec.substr(0, pos);
    params = spec.substr(pos + 1);
  }
  std::replace(name.begin(), name.end(), '_', '-');
  std::vector<std::string> parts;
  std::stringstream ss(params);
  std::string tok;
  while (std::getline(ss, tok, ',')) parts.push_back(tok);

  auto need = [&](std::size_t k) {
    if (parts.size() != k) {
      throw UnknownPreset("preset " + name + " expects " + std::to_string(k) + " parameters");
    }
  };
  PresetResult out;
  if (name == "bes") {
    need(2);
    out.channel = make_bes(parts[0], parts[1]);
  } else if (name == "bsc") {
    need(1);
    out.channel = make_bsc(parts[0]);
  } else if (name == "gilbert-elliott") {
    need(4);
    out.source = make_gilbert_elliott(std::stod(parts[0]), std::stod(parts[1]),
                                      std::stod(parts[2]), std::stod(parts[3]));
  } else if (name == "symmetric-additive") {
    // m, then m*m chain entries (dest-source row-major), then m noise entries.
    if (parts.size() < 1) throw UnknownPreset("symmetric-additive needs parameters");
    std::size_t m = std::stoul(parts[0]);
    need(1 + m * m + m);
    Matrix q(m);
    for (std::size_t i = 0; i < m * m; ++i) q.at(i / m, i % m) = std::stod(parts[1 + i]);
    std::vector<double> pz(m);
    for (std::size_t i = 0; i < m; ++i) pz[i] = std::stod(parts[1 + m * m + i]);
    out.source = make_symmetric_additive(StochasticMatrix(std::move(q)), ProbVector(pz));
  } else {
    throw UnknownPreset("unknown preset: " + name);
  }
  return out;
}

}  // namespace markovflb
