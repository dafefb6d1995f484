#pragma once

#include <array>
#include <optional>
#include <unordered_map>

#include "diamond/params.hpp"
#include "diamond/weights.hpp"
#include "diamond/witt.hpp"

namespace diamond {
namespace groupalg {

// Execution policy for the inner kernels. `parallel` uses OpenMP when the
// build has it and falls back to the serial path otherwise; the serial
// path is the reference implementation.
enum class Exec { serial, parallel };

// Convention-mutation hooks for negative controls.
enum class Mutation { none, s_sign, coset };

struct Mat2 {
    FqElem a, b, c, d;
};

// Shared tables for one (q = p^f, N) instance: Teichmuller cache, discrete
// logs, inverses.
class GroupContext {
public:
    GroupContext(i64 p, int f, int N);

    const FqField& Fq() const { return fq_; }
    const WittRing& W() const { return w_; }
    i64 q() const { return fq_.q(); }

    const WittElem& teich(i64 index) const { return teich_[index]; }
    i64 dlog(i64 index) const;             // index of a nonzero element
    i64 exp_of(i64 k) const;               // index of g^k
    i64 inv_index(i64 index) const;

    // Allocation-free field arithmetic on element indices.
    i64 fadd(i64 a, i64 b) const;
    i64 fsub(i64 a, i64 b) const;
    i64 fmul(i64 a, i64 b) const;

    Mat2 mat(i64 a, i64 b, i64 c, i64 d) const;  // entries by field index

    // index-form matrices for the inner loops
    using Mat2i = std::array<i64, 4>;
    std::uint64_t packi(const Mat2i& m) const;
    Mat2i unpacki(std::uint64_t key) const;
    Mat2i mat_muli(const Mat2i& x, const Mat2i& y) const;

private:
    FqField fq_;
    WittRing w_;
    std::vector<WittElem> teich_;
    std::vector<i64> dlog_, exp_, inv_;
};

// Sparse group-algebra element over GL_2(F_q) with Witt coefficients.
struct GroupAlgElem {
    std::unordered_map<std::uint64_t, WittElem> terms;
};

GroupAlgElem s_op(const GroupContext& g, i64 a, Mutation mut = Mutation::none);
GroupAlgElem s_plus_op(const GroupContext& g, i64 a, Mutation mut = Mutation::none);
GroupAlgElem identity_elem(const GroupContext& g);

GroupAlgElem convolve(const GroupContext& g, const GroupAlgElem& x, const GroupAlgElem& y,
                      Exec exec = Exec::parallel);

struct ScalarExtract {
    bool ok = false;
    std::string err;
    i64 valuation = 0;  // may be negative once denominators enter
    FqElem leading;
};

ScalarExtract extract_scalar(const GroupContext& g, const GroupAlgElem& x, const GroupAlgElem& ref);

// Principal-series model: functions on GL_2(F_q) with f(bg) = [chi](b) f(g),
// acted on by right translation. Basis indexed by the q+1 B-cosets:
// 0 for B itself, 1+i for the coset of (0 1; 1 mu_i).
class PrincipalSeries {
public:
    PrincipalSeries(const GroupContext& g, weights::Character chi, Mutation mut = Mutation::none);

    const GroupContext& ctx() const { return *g_; }
    int dim() const { return static_cast<int>(g_->q() + 1); }
    weights::Character chi() const { return chi_; }

    struct Vec {
        std::vector<WittElem> v;
        int denom = 0;  // the vector stands for p^{-denom} * v
    };

    Vec zero_vec() const;
    Vec phi_chi() const;  // supported on B, value 1 at the identity

    Vec apply(const GroupAlgElem& op, const Vec& in, Exec exec = Exec::parallel) const;
    Vec apply_single(const Mat2& m, const Vec& in) const;
    Vec scale(const WittElem& c, const Vec& in) const;

    // Checks h v = [x]^{a1} [z]^{a2} v for the H-generators.
    bool has_h_character(const Vec& v, weights::Character expect) const;

    ScalarExtract extract_scalar(const Vec& x, const Vec& ref) const;

private:
    const GroupContext* g_;
    weights::Character chi_;
    Mutation mut_;

    // returns basis index of the coset of m and the [chi](b) coefficient
    std::pair<int, const WittElem*> decompose(const GroupContext::Mat2i& m) const;
    GroupContext::Mat2i repi(int index) const;
};

struct OpCheck {
    bool ok = false;
    std::string detail;
    i64 valuation = 0;
    FqElem leading;
};

// S+_a S+_b = (scalar) S+_{a+b} and S_a S+_b = (scalar) S_{a+b}; the scalar
// must have valuation u(a,b) and leading term J(a,b).
OpCheck check_product_pair(const ParamSet& ps, i64 a, i64 b, int N, Exec exec = Exec::parallel);

// n-fold S+ product; splits on whether q-1 divides the index sum.
OpCheck check_product_multi(const ParamSet& ps, const std::vector<i64>& as, int N,
                            Exec exec = Exec::parallel);

// S_a S_b v = (-1)^{t^J} (scalar) S_{a-b-s^J} v on an I-eigenvector of
// character chi_J in the principal series.
OpCheck check_ssv(const ParamSet& ps, const SubsetJ& J, i64 a, i64 b, int N,
                  Mutation mut = Mutation::none, Exec exec = Exec::parallel);

enum class PrBranch { stable, inside_rho, general };

// S_{i(chi^s)} S_0 phi against the branch-dependent right-hand side; the
// extracted leading term must be c(chi_J).
OpCheck check_pr(const ParamSet& ps, const SubsetJ& J, int N, Exec exec = Exec::parallel);

// Precision policy for an n-fold operator product.
int precision_for(int f, int n_ops);

}  // namespace groupalg
}  // namespace diamond
