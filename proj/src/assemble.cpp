#include "sublap/assemble.hpp"

#include <cstdio>
#include <map>
#include <queue>
#include <stdexcept>

namespace sublap {

namespace {

// Row anchors: every lattice point z (interior or not) whose forward stencil
// {z, z+e_k} meets the interior. The zero-extended forward difference at such
// anchors reproduces the whole-lattice quadratic form of the zero-extended
// function; anchors entirely outside the interior stencil contribute nothing
// and are skipped. Deterministic lexicographic order.
template <typename Fn>
void for_each_anchor(const Grid& grid, Fn&& fn) {
  const int n = grid.dim();
  std::vector<int> iv(n, 0);
  const auto& res = grid.resolution();
  while (true) {
    int itail = grid.index_of(iv);
    bool touches = itail >= 0;
    if (!touches) {
      for (int k = 0; k < n && !touches; ++k) {
        auto jv = iv;
        jv[k] += 1;
        touches = grid.index_of(jv) >= 0;
      }
    }
    if (touches) fn(iv, itail);
    int k = n - 1;
    while (k >= 0 && ++iv[k] > res[k]) iv[k--] = 0;
    if (k < 0) break;
  }
}

}  // namespace

DiscreteField discretize_field(const VectorFieldExpr& field, const Grid& grid) {
  if (field.dim() != grid.dim())
    throw std::invalid_argument("discretize_field: dimension mismatch");
  const int n = grid.dim();
  const auto& h = grid.spacing();
  DiscreteField G;
  G.cols = grid.size();
  int row = 0;
  for_each_anchor(grid, [&](const std::vector<int>& iv, int itail) {
    double diag = 0;
    bool any = false;
    for (int k = 0; k < n; ++k) {
      RationalVec mid = grid.node_point(iv);
      mid[k] += grid.spacing_exact()[k] / 2;
      double a = field.component(k).value(to_double_vec(mid));
      if (a == 0.0) continue;
      double v = a / h[k];
      auto jv = iv;
      jv[k] += 1;
      int ihead = grid.index_of(jv);
      if (ihead >= 0) {
        G.triplets.emplace_back(row, ihead, v);
        any = true;
      }
      diag -= v;
    }
    if (itail >= 0 && diag != 0.0) {
      G.triplets.emplace_back(row, itail, diag);
      any = true;
    }
    (void)any;
    ++row;
  });
  G.rows = row;
  return G;
}

DiscreteOperator assemble_operator(const FieldSystem& sys, const Grid& grid) {
  sys.validate();
  if (sys.dim != grid.dim()) throw std::invalid_argument("assemble: dimension mismatch");
  const int n = grid.dim();
  const int N = grid.size();
  const auto& h = grid.spacing();

  // accumulate the quadratic form row by row; per unordered index pair the
  // value is accumulated once and mirrored, so A = A^T bit for bit
  std::map<std::pair<int, int>, double> acc;
  auto add = [&](int i, int j, double v) {
    auto key = i <= j ? std::make_pair(i, j) : std::make_pair(j, i);
    acc[key] += v;
  };

  std::vector<std::pair<int, double>> entries;
  for (const auto& f : sys.fields) {
    for_each_anchor(grid, [&](const std::vector<int>& iv, int itail) {
      entries.clear();
      double diag = 0;
      for (int k = 0; k < n; ++k) {
        RationalVec mid = grid.node_point(iv);
        mid[k] += grid.spacing_exact()[k] / 2;
        double a = f.component(k).value(to_double_vec(mid));
        if (a == 0.0) continue;
        double v = a / h[k];
        auto jv = iv;
        jv[k] += 1;
        int ihead = grid.index_of(jv);
        if (ihead >= 0) entries.emplace_back(ihead, v);
        diag -= v;
      }
      if (itail >= 0 && diag != 0.0) entries.emplace_back(itail, diag);
      for (size_t a1 = 0; a1 < entries.size(); ++a1)
        for (size_t a2 = a1; a2 < entries.size(); ++a2) {
          double v = entries[a1].second * entries[a2].second;
          if (a1 == a2)
            add(entries[a1].first, entries[a1].first, v);
          else
            add(entries[a1].first, entries[a2].first, v);
        }
    });
  }

  DiscreteOperator op;
  op.size = N;
  op.volume_element = grid.volume_element();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(acc.size() * 2);
  for (auto& [key, v] : acc) {
    trip.emplace_back(key.first, key.second, v);
    if (key.first != key.second) trip.emplace_back(key.second, key.first, v);
  }
  op.matrix = SparseMat(N, N);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.matrix.makeCompressed();

  // connectivity of the coupling graph (a Hormander system should connect the
  // interior; a split component signals a degenerate discretization)
  std::vector<int> seen(N, 0);
  if (N > 0) {
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (SparseMat::InnerIterator it(op.matrix, u); it; ++it) {
        int v = (int)it.row();
        if (!seen[v] && it.value() != 0.0 && v != u) {
          seen[v] = 1;
          ++count;
          q.push(v);
        }
      }
    }
    op.connected = (count == N);
  }
  return op;
}

void DiscreteOperator::dump_coo(const std::string& path) const {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  for (int c = 0; c < matrix.outerSize(); ++c)
    for (SparseMat::InnerIterator it(matrix, c); it; ++it)
      std::fprintf(f, "%ld %ld %.17g\n", (long)it.row(), (long)it.col(), it.value());
  std::fclose(f);
}

}  // namespace sublap
