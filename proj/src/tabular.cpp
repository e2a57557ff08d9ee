#include "mherlab/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mherlab/errors.hpp"

namespace mher {

void TabularMdp::validate() const {
  if (num_states < 1 || num_actions < 1) {
    throw ConfigError("TabularMdp needs at least one state and action");
  }
  if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("gamma must be in [0, 1)");
  const std::size_t sa = static_cast<std::size_t>(num_states) * num_actions;
  if (transitions.size() != sa * num_states || rewards.size() != sa) {
    throw ConfigError("TabularMdp table sizes are inconsistent");
  }
  for (int s = 0; s < num_states; ++s) {
    for (int a = 0; a < num_actions; ++a) {
      double sum = 0.0;
      for (int next = 0; next < num_states; ++next) {
        const double prob = p(s, a, next);
        if (prob < 0.0) throw ConfigError("negative transition probability");
        sum += prob;
      }
      if (std::fabs(sum - 1.0) > 1e-9) {
        throw ConfigError("transition row (" + std::to_string(s) + "," +
                          std::to_string(a) + ") does not sum to 1");
      }
      const double rew = r(s, a);
      if (rew < -1.0 || rew > 0.0) {
        throw ConfigError("rewards must lie in [-1, 0]");
      }
    }
  }
}

int TabularMdp::sample_next(int s, int a, Prng& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int next = 0; next < num_states; ++next) {
    acc += p(s, a, next);
    if (u < acc) return next;
  }
  return num_states - 1;
}

bool TabularMdp::deterministic() const {
  for (int s = 0; s < num_states; ++s) {
    for (int a = 0; a < num_actions; ++a) {
      for (int next = 0; next < num_states; ++next) {
        const double prob = p(s, a, next);
        if (prob != 0.0 && prob != 1.0) return false;
      }
    }
  }
  return true;
}

std::vector<double> value_iteration(const TabularMdp& mdp, double tol) {
  mdp.validate();
  const int S = mdp.num_states;
  const int A = mdp.num_actions;
  std::vector<double> q(static_cast<std::size_t>(S) * A, 0.0);
  std::vector<double> next_q(q.size());
  std::vector<double> v(S, 0.0);
  for (int iter = 0; iter < 1000000; ++iter) {
    for (int s = 0; s < S; ++s) {
      double best = q[static_cast<std::size_t>(s) * A];
      for (int a = 1; a < A; ++a) {
        best = std::max(best, q[static_cast<std::size_t>(s) * A + a]);
      }
      v[s] = best;
    }
    double residual = 0.0;
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        double exp_v = 0.0;
        for (int next = 0; next < S; ++next) exp_v += mdp.p(s, a, next) * v[next];
        const std::size_t idx = static_cast<std::size_t>(s) * A + a;
        next_q[idx] = mdp.r(s, a) + mdp.gamma * exp_v;
        residual = std::max(residual, std::fabs(next_q[idx] - q[idx]));
      }
    }
    q.swap(next_q);
    if (residual <= tol) break;
  }
  return q;
}

std::vector<double> value_iteration(const TabularMdp& mdp,
                                    std::span<const int> policy, double tol) {
  mdp.validate();
  (void)tol;  // the direct solve is exact to machine precision
  const int S = mdp.num_states;
  const int A = mdp.num_actions;
  if (static_cast<int>(policy.size()) != S) {
    throw ConfigError("policy table has wrong length");
  }
  for (int a : policy) {
    if (a < 0 || a >= A) throw ConfigError("policy action out of range");
  }

  // Solve (I - gamma * P_pi) v = r_pi by Gaussian elimination with partial
  // pivoting, then expand to Q.
  std::vector<double> m(static_cast<std::size_t>(S) * (S + 1), 0.0);
  for (int s = 0; s < S; ++s) {
    const int a = policy[s];
    for (int next = 0; next < S; ++next) {
      m[static_cast<std::size_t>(s) * (S + 1) + next] =
          (s == next ? 1.0 : 0.0) - mdp.gamma * mdp.p(s, a, next);
    }
    m[static_cast<std::size_t>(s) * (S + 1) + S] = mdp.r(s, a);
  }
  for (int col = 0; col < S; ++col) {
    int pivot = col;
    for (int row = col + 1; row < S; ++row) {
      if (std::fabs(m[static_cast<std::size_t>(row) * (S + 1) + col]) >
          std::fabs(m[static_cast<std::size_t>(pivot) * (S + 1) + col])) {
        pivot = row;
      }
    }
    for (int c = 0; c <= S; ++c) {
      std::swap(m[static_cast<std::size_t>(col) * (S + 1) + c],
                m[static_cast<std::size_t>(pivot) * (S + 1) + c]);
    }
    const double diag = m[static_cast<std::size_t>(col) * (S + 1) + col];
    if (std::fabs(diag) < 1e-14) throw ConfigError("singular policy system");
    for (int row = 0; row < S; ++row) {
      if (row == col) continue;
      const double factor =
          m[static_cast<std::size_t>(row) * (S + 1) + col] / diag;
      if (factor == 0.0) continue;
      for (int c = col; c <= S; ++c) {
        m[static_cast<std::size_t>(row) * (S + 1) + c] -=
            factor * m[static_cast<std::size_t>(col) * (S + 1) + c];
      }
    }
  }
  std::vector<double> v(S);
  for (int s = 0; s < S; ++s) {
    v[s] = m[static_cast<std::size_t>(s) * (S + 1) + S] /
           m[static_cast<std::size_t>(s) * (S + 1) + s];
  }

  std::vector<double> q(static_cast<std::size_t>(S) * A);
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      double exp_v = 0.0;
      for (int next = 0; next < S; ++next) exp_v += mdp.p(s, a, next) * v[next];
      q[static_cast<std::size_t>(s) * A + a] = mdp.r(s, a) + mdp.gamma * exp_v;
    }
  }
  return q;
}

}  // namespace mher
