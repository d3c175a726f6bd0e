#include "ratdyn/bipoly.hpp"

#include <sstream>

#include "ratdyn/errors.hpp"

namespace ratdyn {

BiPoly::BiPoly(FieldPtr ctx, std::vector<std::vector<FieldElement>> rows) : ctx_(std::move(ctx)), rows_(std::move(rows)) {
    trim();
}

void BiPoly::trim() {
    // strip trailing zeros from each row, then empty trailing rows
    std::size_t width = 0;
    for (auto& row : rows_) {
        while (!row.empty() && row.back().is_zero()) row.pop_back();
        width = std::max(width, row.size());
    }
    while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
    for (auto& row : rows_) row.resize(width, FieldElement(ctx_));
}

void BiPoly::check_same(const BiPoly& o) const {
    if (ctx_ != o.ctx_ && !ctx_->same_field(*o.ctx_)) {
        throw ContextMismatchError("bivariate polynomials over different fields were combined");
    }
}

BiPoly BiPoly::in_x(const Poly& p) {
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& c : p.coeffs()) rows.push_back({c});
    return BiPoly(p.context(), std::move(rows));
}

BiPoly BiPoly::in_y(const Poly& p) {
    if (p.is_zero()) return BiPoly(p.context());
    return BiPoly(p.context(), {p.coeffs()});
}

BiPoly BiPoly::graph_of(const Poly& p, const Poly& q) {
    return in_x(p) * in_y(q) - in_y(p) * in_x(q);
}

std::pair<int, int> BiPoly::bidegree() const {
    if (rows_.empty()) return {-1, -1};
    return {static_cast<int>(rows_.size()) - 1, static_cast<int>(rows_.front().size()) - 1};
}

FieldElement BiPoly::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i >= static_cast<int>(rows_.size())) return FieldElement(ctx_);
    const auto& row = rows_[static_cast<std::size_t>(i)];
    if (j >= static_cast<int>(row.size())) return FieldElement(ctx_);
    return row[static_cast<std::size_t>(j)];
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    check_same(o);
    const std::size_t nr = std::max(rows_.size(), o.rows_.size());
    const std::size_t nc = std::max(rows_.empty() ? 0 : rows_[0].size(), o.rows_.empty() ? 0 : o.rows_[0].size());
    rows_.resize(nr);
    for (auto& row : rows_) row.resize(nc, FieldElement(ctx_));
    for (std::size_t i = 0; i < o.rows_.size(); ++i) {
        for (std::size_t j = 0; j < o.rows_[i].size(); ++j) rows_[i][j] += o.rows_[i][j];
    }
    trim();
    return *this;
}

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& row : r.rows_) {
        for (auto& c : row) c = -c;
    }
    return r;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) { return *this += -o; }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    a.check_same(b);
    if (a.is_zero() || b.is_zero()) return BiPoly(a.ctx_);
    const auto [ax, ay] = a.bidegree();
    const auto [bx, by] = b.bidegree();
    std::vector<std::vector<FieldElement>> rows(static_cast<std::size_t>(ax + bx + 1),
                                                std::vector<FieldElement>(static_cast<std::size_t>(ay + by + 1), FieldElement(a.ctx_)));
    for (int i = 0; i <= ax; ++i) {
        for (int j = 0; j <= ay; ++j) {
            const auto& c = a.rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (c.is_zero()) continue;
            for (int k = 0; k <= bx; ++k) {
                for (int l = 0; l <= by; ++l) {
                    const auto& d = b.rows_[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
                    if (!d.is_zero()) rows[static_cast<std::size_t>(i + k)][static_cast<std::size_t>(j + l)] += c * d;
                }
            }
        }
    }
    return BiPoly(a.ctx_, std::move(rows));
}

BiPoly operator*(BiPoly a, const FieldElement& s) {
    for (auto& row : a.rows_) {
        for (auto& c : row) c *= s;
    }
    a.trim();
    return a;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
    a.check_same(b);
    if (a.bidegree() != b.bidegree()) return false;
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
        for (std::size_t j = 0; j < a.rows_[i].size(); ++j) {
            if (!(a.rows_[i][j] == b.rows_[i][j])) return false;
        }
    }
    return true;
}

BiPoly BiPoly::swapped() const {
    if (is_zero()) return *this;
    const auto [dx, dy] = bidegree();
    std::vector<std::vector<FieldElement>> rows(static_cast<std::size_t>(dy + 1),
                                                std::vector<FieldElement>(static_cast<std::size_t>(dx + 1), FieldElement(ctx_)));
    for (int i = 0; i <= dx; ++i) {
        for (int j = 0; j <= dy; ++j) rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return BiPoly(ctx_, std::move(rows));
}

std::complex<double> BiPoly::eval(std::complex<double> x, std::complex<double> y) const {
    std::complex<double> acc = 0;
    for (auto i = rows_.size(); i-- > 0;) {
        std::complex<double> row = 0;
        for (auto j = rows_[i].size(); j-- > 0;) row = row * y + rows_[i][j].to_complex();
        acc = acc * x + row;
    }
    return acc;
}

BiPoly BiPoly::normalized() const {
    if (is_zero()) return *this;
    const auto& last = rows_.back();
    FieldElement lead(ctx_);
    for (auto j = last.size(); j-- > 0;) {
        if (!last[j].is_zero()) {
            lead = last[j];
            break;
        }
    }
    BiPoly r = *this * lead.inverse();
    if (!ctx_->is_rationals()) return r;
    // clear denominators, then remove the content
    mpz_class lcm = 1, content = 0;
    for (const auto& row : r.rows_) {
        for (const auto& c : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.coords()[0].get_den_mpz_t());
    }
    for (const auto& row : r.rows_) {
        for (const auto& c : row) {
            const mpz_class v(c.coords()[0] * lcm);
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        }
    }
    return r * FieldElement(ctx_, make_q(lcm, content));
}

std::optional<BiPoly> bipoly_divide_exact(const BiPoly& P, const BiPoly& D) {
    if (D.is_zero()) return std::nullopt;
    const auto& ctx = P.context();
    if (P.is_zero()) return BiPoly(ctx);
    // lex order: x first, then y. Leading term of D:
    const auto [dx, dy_all] = D.bidegree();
    (void)dy_all;
    int dly = -1;
    for (int j = static_cast<int>(D.rows().back().size()) - 1; j >= 0; --j) {
        if (!D.rows().back()[static_cast<std::size_t>(j)].is_zero()) {
            dly = j;
            break;
        }
    }
    const FieldElement inv_lead = D.coeff(dx, dly).inverse();
    BiPoly rem = P;
    const auto [px, py] = P.bidegree();
    if (px < dx) return std::nullopt;
    std::vector<std::vector<FieldElement>> quo(static_cast<std::size_t>(px - dx + 1),
                                               std::vector<FieldElement>(static_cast<std::size_t>(std::max(py, 0) + 1), FieldElement(ctx)));
    while (!rem.is_zero()) {
        const int rx = rem.bidegree().first;
        int ry = -1;
        const auto& row = rem.rows()[static_cast<std::size_t>(rx)];
        for (int j = static_cast<int>(row.size()) - 1; j >= 0; --j) {
            if (!row[static_cast<std::size_t>(j)].is_zero()) {
                ry = j;
                break;
            }
        }
        if (rx < dx || ry < dly) return std::nullopt;
        const FieldElement c = row[static_cast<std::size_t>(ry)] * inv_lead;
        const int qi = rx - dx, qj = ry - dly;
        if (qj >= static_cast<int>(quo[0].size())) return std::nullopt;
        quo[static_cast<std::size_t>(qi)][static_cast<std::size_t>(qj)] += c;
        std::vector<std::vector<FieldElement>> mono(static_cast<std::size_t>(qi + 1),
                                                    std::vector<FieldElement>(static_cast<std::size_t>(qj + 1), FieldElement(ctx)));
        mono[static_cast<std::size_t>(qi)][static_cast<std::size_t>(qj)] = c;
        rem -= D * BiPoly(ctx, std::move(mono));
    }
    return BiPoly(ctx, std::move(quo));
}

std::string to_string(const BiPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto [dx, dy] = p.bidegree();
    for (int i = dx; i >= 0; --i) {
        for (int j = dy; j >= 0; --j) {
            const FieldElement c = p.coeff(i, j);
            if (c.is_zero()) continue;
            std::string cs;
            if (c.is_rational()) {
                const Q q = c.coords()[0];
                if (!first) os << (q < 0 ? " - " : " + ");
                else if (q < 0) os << "-";
                const Q a = abs(q);
                if (a != 1 || (i == 0 && j == 0)) cs = a.get_str();
            } else {
                if (!first) os << " + ";
                cs = to_string(c);
            }
            first = false;
            os << cs;
            bool need_star = !cs.empty();
            if (i > 0) {
                os << (need_star ? "*" : "") << "x";
                if (i > 1) os << "^" << i;
                need_star = true;
            }
            if (j > 0) {
                os << (need_star ? "*" : "") << "y";
                if (j > 1) os << "^" << j;
            }
        }
    }
    return os.str();
}

}  // namespace ratdyn
