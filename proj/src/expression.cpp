#include "bidisc/expression.hpp"

#include <stdexcept>

#include <json.hpp>

namespace bidisc {

namespace {

expr node(expr_kind k) {
    auto n = std::make_shared<expr_node>();
    n->kind = k;
    return n;
}

constexpr double div_floor = 1e-300;
constexpr double log_cut_tol = 1e-12;

} // namespace

expr make_const(cplx v) {
    auto n = std::make_shared<expr_node>();
    n->kind = expr_kind::constant;
    n->value = v;
    return n;
}

expr make_var_z() { return node(expr_kind::var_z); }
expr make_var_w() { return node(expr_kind::var_w); }

static expr binary(expr_kind k, expr a, expr b) {
    auto n = std::make_shared<expr_node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

static expr unary(expr_kind k, expr a) {
    auto n = std::make_shared<expr_node>();
    n->kind = k;
    n->lhs = std::move(a);
    return n;
}

expr make_add(expr a, expr b) { return binary(expr_kind::add, std::move(a), std::move(b)); }
expr make_sub(expr a, expr b) { return binary(expr_kind::sub, std::move(a), std::move(b)); }
expr make_mul(expr a, expr b) { return binary(expr_kind::mul, std::move(a), std::move(b)); }
expr make_div(expr a, expr b) { return binary(expr_kind::div, std::move(a), std::move(b)); }
expr make_neg(expr a) { return unary(expr_kind::neg, std::move(a)); }
expr make_exp(expr a) { return unary(expr_kind::exp_fn, std::move(a)); }
expr make_log(expr a) { return unary(expr_kind::log_fn, std::move(a)); }

expr make_powi(expr a, int n) {
    auto e = std::make_shared<expr_node>();
    e->kind = expr_kind::powi;
    e->lhs = std::move(a);
    e->power = n;
    return e;
}

namespace {

cplx int_pow(cplx base, int n) {
    if (n == 0) return 1.0;
    bool invert = n < 0;
    unsigned m = invert ? static_cast<unsigned>(-(long long)n) : static_cast<unsigned>(n);
    cplx acc = 1.0, p = base;
    while (m) {
        if (m & 1u) acc *= p;
        p *= p;
        m >>= 1;
    }
    return invert ? 1.0 / acc : acc;
}

} // namespace

eval_result eval(const expr& e, cplx z, cplx w) {
    if (!e) throw std::invalid_argument("eval: null expression");
    eval_result r;
    switch (e->kind) {
    case expr_kind::constant:
        r.value = e->value;
        return r;
    case expr_kind::var_z:
        r.value = z;
        return r;
    case expr_kind::var_w:
        r.value = w;
        return r;
    case expr_kind::add:
    case expr_kind::sub:
    case expr_kind::mul:
    case expr_kind::div: {
        eval_result a = eval(e->lhs, z, w);
        if (!a.ok()) return a;
        eval_result b = eval(e->rhs, z, w);
        if (!b.ok()) return b;
        if (e->kind == expr_kind::add) r.value = a.value + b.value;
        else if (e->kind == expr_kind::sub) r.value = a.value - b.value;
        else if (e->kind == expr_kind::mul) r.value = a.value * b.value;
        else {
            if (std::abs(b.value) < div_floor) {
                r.status = eval_status::singularity;
                r.where = e.get();
                return r;
            }
            r.value = a.value / b.value;
        }
        return r;
    }
    case expr_kind::neg: {
        eval_result a = eval(e->lhs, z, w);
        if (!a.ok()) return a;
        r.value = -a.value;
        return r;
    }
    case expr_kind::powi: {
        eval_result a = eval(e->lhs, z, w);
        if (!a.ok()) return a;
        if (e->power < 0 && std::abs(a.value) < div_floor) {
            r.status = eval_status::singularity;
            r.where = e.get();
            return r;
        }
        r.value = int_pow(a.value, e->power);
        return r;
    }
    case expr_kind::exp_fn: {
        eval_result a = eval(e->lhs, z, w);
        if (!a.ok()) return a;
        r.value = std::exp(a.value);
        return r;
    }
    case expr_kind::log_fn: {
        eval_result a = eval(e->lhs, z, w);
        if (!a.ok()) return a;
        if (std::abs(a.value) < div_floor) {
            r.status = eval_status::singularity;
            r.where = e.get();
            return r;
        }
        if (a.value.real() < 0.0 && std::abs(a.value.imag()) < log_cut_tol) {
            r.status = eval_status::branch_cut;
            r.where = e.get();
            return r;
        }
        r.value = std::log(a.value);
        return r;
    }
    }
    throw std::logic_error("eval: unknown node kind");
}

namespace {

using nlohmann::json;

const char* kind_name(expr_kind k) {
    switch (k) {
    case expr_kind::constant: return "const";
    case expr_kind::var_z: return "var_z";
    case expr_kind::var_w: return "var_w";
    case expr_kind::add: return "add";
    case expr_kind::sub: return "sub";
    case expr_kind::mul: return "mul";
    case expr_kind::div: return "div";
    case expr_kind::neg: return "neg";
    case expr_kind::powi: return "powi";
    case expr_kind::exp_fn: return "exp";
    case expr_kind::log_fn: return "log";
    }
    return "?";
}

json to_tree(const expr& e) {
    json j;
    j["kind"] = kind_name(e->kind);
    switch (e->kind) {
    case expr_kind::constant:
        j["value"] = {e->value.real(), e->value.imag()};
        break;
    case expr_kind::var_z:
    case expr_kind::var_w:
        break;
    case expr_kind::powi:
        j["n"] = e->power;
        j["args"] = {to_tree(e->lhs)};
        break;
    case expr_kind::neg:
    case expr_kind::exp_fn:
    case expr_kind::log_fn:
        j["args"] = {to_tree(e->lhs)};
        break;
    default:
        j["args"] = {to_tree(e->lhs), to_tree(e->rhs)};
        break;
    }
    return j;
}

expr from_tree(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    auto child = [&](std::size_t i) { return from_tree(j.at("args").at(i)); };
    if (kind == "const") {
        const auto& v = j.at("value");
        return make_const(cplx(v.at(0).get<double>(), v.at(1).get<double>()));
    }
    if (kind == "var_z") return make_var_z();
    if (kind == "var_w") return make_var_w();
    if (kind == "add") return make_add(child(0), child(1));
    if (kind == "sub") return make_sub(child(0), child(1));
    if (kind == "mul") return make_mul(child(0), child(1));
    if (kind == "div") return make_div(child(0), child(1));
    if (kind == "neg") return make_neg(child(0));
    if (kind == "powi") return make_powi(child(0), j.at("n").get<int>());
    if (kind == "exp") return make_exp(child(0));
    if (kind == "log") return make_log(child(0));
    throw std::invalid_argument("expr_from_json: unknown node kind '" + kind + "'");
}

} // namespace

std::string expr_to_json(const expr& e) { return to_tree(e).dump(); }

expr expr_from_json(const std::string& text) { return from_tree(json::parse(text)); }

} // namespace bidisc
