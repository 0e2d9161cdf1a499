#pragma once

#include "equilibrium.hpp"
#include "modelchain.hpp"
#include "oracle.hpp"
#include "poly.hpp"
#include "potentials.hpp"
#include "real.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcut {

struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_no, const std::string& what)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what), line(line_no) {}
};

// key = value lines, '#' starts a comment
struct KeyValues {
    std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)

    bool has(const std::string& k) const { return entries.count(k) != 0; }
    const std::string& raw(const std::string& k) const {
        auto it = entries.find(k);
        if (it == entries.end()) throw parse_error(0, "missing key '" + k + "'");
        return it->second.first;
    }
    int line_of(const std::string& k) const {
        auto it = entries.find(k);
        return it == entries.end() ? 0 : it->second.second;
    }

    template <class T>
    T real(const std::string& k) const {
        try {
            return T(raw(k));
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception&) {
            throw parse_error(line_of(k), "key '" + k + "': not a number: '" + raw(k) + "'");
        }
    }
    int integer(const std::string& k) const {
        const auto& v = raw(k);
        std::size_t pos = 0;
        int r = 0;
        try {
            r = std::stoi(v, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != v.size()) throw parse_error(line_of(k), "key '" + k + "': not an integer: '" + v + "'");
        return r;
    }
    template <class T>
    std::vector<T> reals(const std::string& k) const {
        std::istringstream is(raw(k));
        std::vector<T> out;
        std::string tok;
        while (is >> tok) {
            try {
                out.push_back(T(tok));
            } catch (const std::exception&) {
                throw parse_error(line_of(k), "key '" + k + "': bad number '" + tok + "'");
            }
        }
        if (out.empty()) throw parse_error(line_of(k), "key '" + k + "': empty list");
        return out;
    }
};

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw parse_error(n, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty()) throw parse_error(n, "empty key");
        if (val.empty()) throw parse_error(n, "empty value for '" + key + "'");
        if (kv.has(key)) throw parse_error(n, "duplicate key '" + key + "'");
        kv.entries[key] = {val, n};
    }
    return kv;
}

inline KeyValues read_key_values(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open '" + path + "'");
    return parse_key_values(f);
}

template <class T>
std::string join_reals(const std::vector<T>& v, int digits = 30) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += to_string(v[i], digits);
    }
    return s;
}

// Spec blocks come in two forms:
//   full:        nu, e, Q, V, Tc (as written by write_spec)
//   constructed: nu, e or phi_e, and optionally Q_tilde (default 1)
// Coefficient lists are ascending.
template <class T>
CriticalSpec<T> spec_from_key_values(const KeyValues& kv) {
    using std::acosh; using std::cosh;
    int nu = kv.integer("nu");
    if (nu < 1) throw parse_error(kv.line_of("nu"), "nu must be >= 1");
    T e;
    if (kv.has("e")) e = kv.real<T>("e");
    else if (kv.has("phi_e")) e = 2 * cosh(kv.real<T>("phi_e"));
    else throw parse_error(0, "missing key 'e' (or 'phi_e')");
    if (!(e > 2)) throw parse_error(kv.line_of("e"), "e must exceed 2");
    if (kv.has("Q")) {
        CriticalSpec<T> s;
        s.nu = nu;
        s.e = e;
        s.phi_e = acosh(e / 2);
        s.Q = Poly<T>(kv.reals<T>("Q"));
        s.V = Poly<T>(kv.reals<T>("V"));
        s.Tc = kv.real<T>("Tc");
        s.d = s.V.degree() - 1;
        if (kv.has("e_tilde")) {
            s.e_tilde = kv.real<T>("e_tilde");
        } else {
            auto r = real_roots(s.Q, T(2), e);
            s.e_tilde = r.empty() ? T(0) : r.front();
        }
        return s;
    }
    Poly<T> qt = kv.has("Q_tilde") ? Poly<T>(kv.reals<T>("Q_tilde")) : Poly<T>::constant(T(1));
    return make_critical_spec<T>(nu, e, qt);
}

template <class T>
CriticalSpec<T> read_spec(const std::string& path) {
    return spec_from_key_values<T>(read_key_values(path));
}

template <class T>
void write_spec(std::ostream& os, const CriticalSpec<T>& s) {
    const int D = std::numeric_limits<T>::max_digits10;
    os << "# critical potential\n";
    os << "nu = " << s.nu << "\n";
    os << "e = " << to_string(s.e, D) << "\n";
    os << "phi_e = " << to_string(s.phi_e, D) << "\n";
    os << "e_tilde = " << to_string(s.e_tilde, D) << "\n";
    os << "Q = " << join_reals(s.Q.coeffs(), D) << "\n";
    os << "V = " << join_reals(s.V.coeffs(), D) << "\n";
    os << "Tc = " << to_string(s.Tc, D) << "\n";
}

template <class T>
void write_measure(std::ostream& os, const EqMeasure<T>& mu) {
    const int D = std::numeric_limits<T>::max_digits10;
    os << "# equilibrium measure\n";
    os << "s = " << mu.s << "\n";
    os << "T = " << to_string(mu.temp, D) << "\n";
    os << "ends = " << join_reals(mu.ends, D) << "\n";
    os << "V = " << join_reals(mu.V.coeffs(), D) << "\n";
    os << "M = " << join_reals(mu.M.coeffs(), D) << "\n";
    if (mu.s == 2) {
        os << "x0 = " << to_string(mu.x0, D) << "\n";
        os << "m = " << to_string(mu.m, D) << "\n";
    }
}

template <class T>
EqMeasure<T> measure_from_key_values(const KeyValues& kv) {
    EqMeasure<T> mu;
    mu.s = kv.integer("s");
    if (mu.s != 1 && mu.s != 2) throw parse_error(kv.line_of("s"), "s must be 1 or 2");
    mu.temp = kv.real<T>("T");
    mu.ends = kv.reals<T>("ends");
    if (static_cast<int>(mu.ends.size()) != 2 * mu.s)
        throw parse_error(kv.line_of("ends"), "expected " + std::to_string(2 * mu.s) + " endpoints");
    for (std::size_t i = 1; i < mu.ends.size(); ++i)
        if (!(mu.ends[i - 1] < mu.ends[i])) throw parse_error(kv.line_of("ends"), "endpoints must increase");
    mu.V = Poly<T>(kv.reals<T>("V"));
    mu.M = Poly<T>(kv.reals<T>("M"));
    if (mu.s == 2) detail::fill_two_cut(mu);
    return mu;
}

template <class T>
EqMeasure<T> read_measure(const std::string& path) {
    return measure_from_key_values<T>(read_key_values(path));
}

// k, ln_zeta, gamma, ln_A at 30 significant digits
template <class T>
void write_chain_table(std::ostream& os, const ModelChain<T>& ch) {
    os << "k,ln_zeta,gamma,ln_A\n";
    for (int k = 0; k <= ch.k_max; ++k)
        os << k << ',' << to_string(ch.ln_zeta[k]) << ',' << to_string(ch.gamma[k]) << ',' << to_string(ch.ln_A[k])
           << '\n';
}

// n, ln_h, gamma, beta at 30 significant digits
template <class T>
void write_rec_table(std::ostream& os, const RecChain<T>& ch) {
    os << "n,ln_h,gamma,beta\n";
    for (int n = 0; n <= ch.n_max; ++n)
        os << n << ',' << to_string(ch.ln_h[n]) << ',' << to_string(ch.gamma[n]) << ',' << to_string(ch.beta[n])
           << '\n';
}

// minimal CSV writer; doubles at 17 significant digits, "C" locale
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), cols_(header.size()) {
        os_.imbue(std::locale::classic());
        write_row_strings(header);
    }

    template <class... Args>
    void row(const Args&... args) {
        std::vector<std::string> cells;
        (cells.push_back(cell(args)), ...);
        if (cells.size() != cols_) throw std::logic_error("CsvWriter: column count mismatch");
        write_row_strings(cells);
    }

    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(double v) {
        std::ostringstream o;
        o.imbue(std::locale::classic());
        o << std::setprecision(17) << v;
        return o.str();
    }
    template <class T>
    static std::string cell(const T& v) {
        return to_string(v, 20);
    }

private:
    void write_row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
        os_ << '\n';
    }
    std::ostream& os_;
    std::size_t cols_;
};

} // namespace bcut
