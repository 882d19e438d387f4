#include "mfkit/koszul.hpp"

#include <algorithm>
#include <functional>

namespace mfkit {

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

int subset_index(const std::vector<std::vector<int>>& subsets, const std::vector<int>& s) {
  auto it = std::lower_bound(subsets.begin(), subsets.end(), s);
  if (it == subsets.end() || *it != s) throw Error("internal: subset not found");
  return static_cast<int>(it - subsets.begin());
}

void check_sequence(const GradedRing& ring, std::span<const int> sequence) {
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (sequence[i] < 0 || sequence[i] >= ring.nvars()) throw Error("koszul: bad variable index");
    for (std::size_t j = i + 1; j < sequence.size(); ++j)
      if (sequence[i] == sequence[j])
        throw Error("koszul: repeated variable '" + ring.vars()[sequence[i]] + "'");
  }
}

}  // namespace

FreeComplex koszul_complex(const GradedRing& ring, std::span<const int> sequence) {
  check_sequence(ring, sequence);
  int n = static_cast<int>(sequence.size());
  int nv = ring.nvars();

  std::vector<FreeModule> modules;  // index j = -k, stored from lo = -n upward
  std::vector<std::vector<std::vector<int>>> bases(n + 1);
  for (int k = 0; k <= n; ++k) bases[k] = subsets_of_size(n, k);

  for (int k = n; k >= 0; --k) {
    FreeModule m;
    for (const auto& s : bases[k]) {
      long tw = 0;
      for (int i : s) tw -= ring.weights()[sequence[i]];
      m.twists.push_back(tw);
    }
    modules.push_back(std::move(m));
  }

  // d_{-k+1} : Lambda^k -> Lambda^{k-1}
  std::vector<PolyMat> diffs;
  for (int k = n; k >= 1; --k) {
    PolyMat d = poly_zero_matrix(static_cast<long>(bases[k - 1].size()),
                                 static_cast<long>(bases[k].size()), nv);
    for (std::size_t col = 0; col < bases[k].size(); ++col) {
      const auto& s = bases[k][col];
      for (std::size_t pos = 0; pos < s.size(); ++pos) {
        std::vector<int> t = s;
        t.erase(t.begin() + static_cast<long>(pos));
        int row = subset_index(bases[k - 1], t);
        Poly x = ring.variable(sequence[s[pos]]);
        if (pos % 2 == 1) x = -x;
        d(row, static_cast<long>(col)) += x;
      }
    }
    diffs.push_back(std::move(d));
  }
  return make_complex(ring, -n, std::move(modules), std::move(diffs));
}

KoszulData koszul_homotopy(const FreeComplex& koszul, const GradedRing& ring,
                           std::span<const int> sequence, std::span<const Poly> splitting) {
  check_sequence(ring, sequence);
  int n = static_cast<int>(sequence.size());
  if (static_cast<int>(splitting.size()) != n) throw Error("koszul_homotopy: one w_i per sequence entry");

  Poly w = ring.zero();
  for (int i = 0; i < n; ++i) w += splitting[i].bound(ring.nvars()) * ring.variable(sequence[i]);

  std::vector<std::vector<std::vector<int>>> bases(n + 1);
  for (int k = 0; k <= n; ++k) bases[k] = subsets_of_size(n, k);

  KoszulData data;
  data.sequence.assign(sequence.begin(), sequence.end());
  data.splitting.assign(splitting.begin(), splitting.end());
  data.w = w;
  data.complex = koszul;

  // h_{-k} : Lambda^k -> Lambda^{k+1}, e_S -> (sum w_i e_i) ^ e_S
  for (int k = 0; k < n; ++k) {
    PolyMat h = poly_zero_matrix(static_cast<long>(bases[k + 1].size()),
                                 static_cast<long>(bases[k].size()), ring.nvars());
    for (std::size_t col = 0; col < bases[k].size(); ++col) {
      const auto& s = bases[k][col];
      for (int i = 0; i < n; ++i) {
        if (std::find(s.begin(), s.end(), i) != s.end()) continue;
        std::vector<int> t = s;
        auto it = std::lower_bound(t.begin(), t.end(), i);
        long pos = it - t.begin();
        t.insert(it, i);
        int row = subset_index(bases[k + 1], t);
        Poly wi = splitting[i].bound(ring.nvars());
        if (pos % 2 == 1) wi = -wi;
        h(row, static_cast<long>(col)) += wi;
      }
    }
    data.homotopies[-k] = std::move(h);
  }
  data.homotopies[-n] = poly_zero_matrix(0, static_cast<long>(bases[n].size()), ring.nvars());

  // Cartan identity and square-zero, exactly.
  for (long j = -n; j <= 0; ++j) {
    long rk = koszul.rank_at(j);
    PolyMat dh = koszul.diff_at(j) * data.homotopies.at(j);
    PolyMat hd = poly_zero_matrix(rk, rk, ring.nvars());
    if (j + 1 <= 0) hd = data.homotopies.at(j + 1) * koszul.diff_at(j + 1);
    if (!(PolyMat(dh + hd) == scalar_matrix(w, rk)))
      throw Error("koszul_homotopy: Cartan identity dh + hd = w*Id fails at index " + std::to_string(j));
  }
  for (long j = -n + 1; j <= 0; ++j) {
    PolyMat hh = data.homotopies.at(j - 1) * data.homotopies.at(j);
    if (!is_zero(hh)) throw Error("koszul_homotopy: h^2 != 0 at index " + std::to_string(j));
  }
  return data;
}

std::vector<Poly> split_w(const GradedRing& ring, const Poly& w, std::span<const int> sequence) {
  check_sequence(ring, sequence);
  std::vector<Poly> parts(sequence.size(), ring.zero());
  Poly wb = w.bound(ring.nvars());
  for (const auto& [m, c] : wb.terms()) {
    bool assigned = false;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
      if (m[sequence[i]] > 0) {
        Mono q = m;
        q[sequence[i]] -= 1;
        parts[i] += ring.monomial(q, c);
        assigned = true;
        break;
      }
    }
    if (!assigned)
      throw Error("split_w: monomial " + ring.to_string(ring.monomial(m, FieldElem(1))) +
                  " is not divisible by any sequence variable");
  }
  return parts;
}

}  // namespace mfkit
