#include "cclab/profiles.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <vector>

#include "cclab/csv_io.hpp"
#include "cclab/errors.hpp"

namespace cclab {

namespace {

struct Node {
    std::function<double(double)> f;
    bool constant = false;
};

double smootherstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0);
}

class Parser {
public:
    Parser(const std::string& src, const ParamMap& params,
           const std::string& base_dir)
        : src_(src), params_(params), base_dir_(base_dir) {}

    Node parse() {
        Node n = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("profile '" + src_ + "': " + what + " at column " +
                          std::to_string(pos_ + 1));
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Node expr() {
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        Node acc = term();
        if (neg) acc = negate(acc);
        for (;;) {
            if (eat('+')) {
                acc = combine(acc, term(), +1.0);
            } else if (eat('-')) {
                acc = combine(acc, term(), -1.0);
            } else {
                return acc;
            }
        }
    }

    Node term() {
        Node acc = atom();
        while (eat('*')) {
            Node rhs = atom();
            Node out;
            out.constant = acc.constant && rhs.constant;
            out.f = [a = acc.f, b = rhs.f](double t) { return a(t) * b(t); };
            acc = std::move(out);
        }
        return acc;
    }

    static Node negate(const Node& n) {
        Node out;
        out.constant = n.constant;
        out.f = [f = n.f](double t) { return -f(t); };
        return out;
    }

    static Node combine(const Node& a, const Node& b, double sign) {
        Node out;
        out.constant = a.constant && b.constant;
        out.f = [fa = a.f, fb = b.f, sign](double t) {
            return fa(t) + sign * fb(t);
        };
        return out;
    }

    Node atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of expression");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Node n = expr();
            if (!eat(')')) fail("missing ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(src_.c_str() + pos_, &end);
            if (end == src_.c_str() + pos_) fail("bad number");
            pos_ = static_cast<size_t>(end - src_.c_str());
            Node n;
            n.constant = true;
            n.f = [v](double) { return v; };
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return ident();
        fail("unexpected character");
    }

    Node ident() {
        const size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_'))
            ++pos_;
        const std::string name = src_.substr(start, pos_ - start);

        if (eat('(')) {
            if (name == "bump") {
                auto a = const_args(3);
                if (!eat(')')) fail("missing ')'");
                const double c = a[0], w = a[1], amp = a[2];
                if (!(w > 0.0)) fail("bump width must be positive");
                Node n;
                n.f = [c, w, amp](double t) {
                    const double x = (t - c) / w;
                    if (std::abs(x) >= 1.0) return 0.0;
                    return amp * std::exp(1.0 - 1.0 / (1.0 - x * x));
                };
                return n;
            }
            if (name == "well") {
                auto a = const_args(3);
                if (!eat(')')) fail("missing ')'");
                const double lo = a[0], hi = a[1], ramp = a[2];
                if (!(hi > lo) || !(ramp > 0.0))
                    fail("well needs t_lo < t_hi and ramp > 0");
                // exactly 0 on [lo, hi], 1 outside the ramps
                Node n;
                n.f = [lo, hi, ramp](double t) {
                    if (t >= lo && t <= hi) return 0.0;
                    if (t < lo) return smootherstep((lo - t) / ramp);
                    return smootherstep((t - hi) / ramp);
                };
                return n;
            }
            if (name == "table") {
                skip_ws();
                if (pos_ >= src_.size() || src_[pos_] != '\'')
                    fail("table path must be single-quoted");
                ++pos_;
                const size_t p0 = pos_;
                while (pos_ < src_.size() && src_[pos_] != '\'') ++pos_;
                if (pos_ >= src_.size()) fail("unterminated table path");
                std::string path = src_.substr(p0, pos_ - p0);
                ++pos_;
                if (!eat(')')) fail("missing ')'");
                if (!path.empty() && path[0] != '/')
                    path = base_dir_ + "/" + path;
                auto rows = std::make_shared<
                    std::vector<std::pair<double, double>>>(read_table_csv(path));
                Node n;
                n.f = [rows](double t) {
                    const auto& tb = *rows;
                    if (t <= tb.front().first) return tb.front().second;
                    if (t >= tb.back().first) return tb.back().second;
                    size_t lo = 0, hi = tb.size() - 1;
                    while (hi - lo > 1) {
                        const size_t mid = (lo + hi) / 2;
                        (tb[mid].first <= t ? lo : hi) = mid;
                    }
                    const auto& [t0, v0] = tb[lo];
                    const auto& [t1, v1] = tb[hi];
                    if (t == t0) return v0;
                    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
                };
                return n;
            }
            fail("unknown function '" + name + "'");
        }

        const auto it = params_.find(name);
        if (it == params_.end()) fail("unresolved identifier '" + name + "'");
        const double v = it->second;
        Node n;
        n.constant = true;
        n.f = [v](double) { return v; };
        return n;
    }

    std::vector<double> const_args(int count) {
        std::vector<double> out;
        for (int k = 0; k < count; ++k) {
            Node n = expr();
            if (!n.constant) fail("function arguments must be constants");
            out.push_back(n.f(0.0));
            if (k + 1 < count && !eat(',')) fail("expected ','");
        }
        return out;
    }

    const std::string& src_;
    const ParamMap& params_;
    std::string base_dir_;
    size_t pos_ = 0;
};

} // namespace

Profile parse_profile(const std::string& expr, const ParamMap& params,
                      const std::string& base_dir) {
    Parser p(expr, params, base_dir);
    Node n = p.parse();
    return Profile{expr, std::move(n.f)};
}

} // namespace cclab
