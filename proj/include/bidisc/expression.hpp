#ifndef BIDISC_EXPRESSION_HPP
#define BIDISC_EXPRESSION_HPP

#include <memory>
#include <string>

#include "bidisc/numeric.hpp"

namespace bidisc {

enum class expr_kind { constant, var_z, var_w, add, sub, mul, div, neg, powi, exp_fn, log_fn };

struct expr_node;
using expr = std::shared_ptr<const expr_node>;

// Immutable arithmetic tree over z and w.  log is the principal branch with
// its cut on the negative real axis of the argument.
struct expr_node {
    expr_kind kind = expr_kind::constant;
    cplx value = 0.0; // constant payload
    int power = 0;    // powi payload
    expr lhs, rhs;
};

enum class eval_status { ok, singularity, branch_cut };

// Evaluation result; on failure `where` points at the offending subtree.
struct eval_result {
    cplx value = 0.0;
    eval_status status = eval_status::ok;
    const expr_node* where = nullptr;

    bool ok() const { return status == eval_status::ok; }
};

eval_result eval(const expr& e, cplx z, cplx w);

// builders
expr make_const(cplx v);
expr make_var_z();
expr make_var_w();
expr make_add(expr a, expr b);
expr make_sub(expr a, expr b);
expr make_mul(expr a, expr b);
expr make_div(expr a, expr b);
expr make_neg(expr a);
expr make_powi(expr a, int n);
expr make_exp(expr a);
expr make_log(expr a);

inline expr operator+(expr a, expr b) { return make_add(std::move(a), std::move(b)); }
inline expr operator-(expr a, expr b) { return make_sub(std::move(a), std::move(b)); }
inline expr operator*(expr a, expr b) { return make_mul(std::move(a), std::move(b)); }
inline expr operator/(expr a, expr b) { return make_div(std::move(a), std::move(b)); }
inline expr operator-(expr a) { return make_neg(std::move(a)); }

// JSON tree with node kinds const/var_z/var_w/add/sub/mul/div/neg/powi/exp/
// log; complex constants as [re, im] pairs.  Round-trips bit-exactly.
std::string expr_to_json(const expr& e);
expr expr_from_json(const std::string& text);

} // namespace bidisc

#endif
