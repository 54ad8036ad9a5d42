#include "tlms/format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tlms {

namespace {

constexpr std::string_view kHeader = "tlms-v1";

struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
    std::size_t value_col = 0;  // 1-based column of value[0]
    std::size_t key_col = 0;
};

struct Section {
    std::string name;
    std::size_t line = 0;
    std::vector<Entry> entries;

    const Entry* find(std::string_view key) const {
        for (const auto& e : entries)
            if (e.key == key) return &e;
        return nullptr;
    }
};

/// Scanner over one value string that reports columns in file coordinates.
class Cursor {
public:
    explicit Cursor(const Entry& e) : e_(e) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(e_.line, e_.value_col + pos_, msg); }

    void skip_ws() {
        while (pos_ < e_.value.size() && std::isspace(static_cast<unsigned char>(e_.value[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= e_.value.size();
    }
    char peek() {
        skip_ws();
        return pos_ < e_.value.size() ? e_.value[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    Int read_int() {
        skip_ws();
        const char* begin = e_.value.data() + pos_;
        const char* end = e_.value.data() + e_.value.size();
        Int v = 0;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec == std::errc::result_out_of_range) fail("integer overflow");
        if (ec != std::errc()) fail("expected an integer");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }
    std::size_t read_index(std::size_t bound, const char* what) {
        const std::size_t at = pos_;
        const Int v = read_int();
        if (v < 1 || static_cast<std::size_t>(v) > bound) {
            pos_ = at;
            skip_ws();
            fail(std::string(what) + " out of range 1.." + std::to_string(bound));
        }
        return static_cast<std::size_t>(v - 1);
    }
    Vec read_vec() {
        expect('(');
        std::vector<Int> c{read_int()};
        while (accept(',')) c.push_back(read_int());
        expect(')');
        return Vec(std::move(c));
    }
    Rational read_rational() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < e_.value.size() && !std::isspace(static_cast<unsigned char>(e_.value[pos_])) &&
               e_.value[pos_] != ';')
            ++pos_;
        const std::string_view tok(e_.value.data() + start, pos_ - start);
        try {
            return parse_rational(tok);
        } catch (const std::out_of_range&) {
            pos_ = start;
            fail("integer overflow in rational");
        } catch (const std::exception&) {
            pos_ = start;
            fail("malformed rational '" + std::string(tok) + "'");
        }
    }
    void finish() {
        if (!at_end()) fail("unexpected trailing text");
    }

private:
    const Entry& e_;
    std::size_t pos_ = 0;
};

std::vector<Vec> read_vecs(const Entry& e) {
    Cursor c(e);
    std::vector<Vec> out;
    while (!c.at_end()) {
        Vec v = c.read_vec();
        if (v.dim() != 2) c.fail("vectors must have 2 coordinates");
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Int> read_ints(const Entry& e) {
    Cursor c(e);
    std::vector<Int> out;
    while (!c.at_end()) out.push_back(c.read_int());
    return out;
}

RatMatrix read_matrix(const Entry& e, std::size_t n) {
    Cursor c(e);
    std::vector<std::vector<Rational>> rows(1);
    while (!c.at_end()) {
        if (c.accept(';')) {
            rows.emplace_back();
            continue;
        }
        rows.back().push_back(c.read_rational());
    }
    if (rows.size() != n) throw ParseError(e.line, e.value_col, "matrix needs " + std::to_string(n) + " rows");
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw ParseError(e.line, e.value_col, "matrix row " + std::to_string(i + 1) + " needs " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

/// Splits "sheets.3" into {"sheets", 3}; also "n.2.1".
std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> parts;
    std::stringstream ss(key);
    std::string p;
    while (std::getline(ss, p, '.')) parts.push_back(p);
    return parts;
}

std::size_t key_index(const Entry& e, const std::string& part, std::size_t bound) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v < 1 || v > bound)
        throw ParseError(e.line, e.key_col, "index in key '" + e.key + "' out of range 1.." + std::to_string(bound));
    return v - 1;
}

std::vector<Section> split_sections(std::string_view text) {
    std::vector<Section> sections;
    bool header = false;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        start = end + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            if (end == text.size()) break;
            continue;
        }
        const std::size_t last = line.find_last_not_of(" \t");
        const std::string body = line.substr(first, last - first + 1);
        if (!header) {
            if (body != kHeader) throw ParseError(lineno, first + 1, "expected header line 'tlms-v1'");
            header = true;
        } else if (body.front() == '[') {
            if (body.back() != ']') throw ParseError(lineno, first + 1 + body.size(), "expected ']'");
            const std::string name = body.substr(1, body.size() - 2);
            static const std::set<std::string> known{"fan", "multisection", "kaneyama", "wall"};
            if (!known.count(name)) throw ParseError(lineno, first + 2, "unknown section '" + name + "'");
            for (const auto& s : sections)
                if (s.name == name) throw ParseError(lineno, first + 2, "duplicate section '" + name + "'");
            sections.push_back(Section{name, lineno, {}});
        } else {
            if (sections.empty()) throw ParseError(lineno, first + 1, "key outside of a section");
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(lineno, first + 1, "expected 'key = value'");
            std::string key = line.substr(first, eq - first);
            key.erase(key.find_last_not_of(" \t") + 1);
            if (key.empty()) throw ParseError(lineno, first + 1, "empty key");
            for (std::size_t i = 0; i < key.size(); ++i) {
                const char ch = key[i];
                if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '_'))
                    throw ParseError(lineno, first + 1 + i, "invalid character in key");
            }
            auto& sec = sections.back();
            if (sec.find(key)) throw ParseError(lineno, first + 1, "duplicate key '" + key + "'");
            sec.entries.push_back(Entry{key, line.substr(eq + 1), lineno, eq + 2, first + 1});
        }
        if (end == text.size()) break;
    }
    if (!header) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing header line 'tlms-v1'");
    return sections;
}

Fan2D parse_fan(const Section& s) {
    const Entry* rays = nullptr;
    for (const auto& e : s.entries) {
        if (e.key == "rays") {
            rays = &e;
        } else if (e.key == "dim") {
            Cursor c(e);
            const Int d = c.read_int();
            c.finish();
            if (d != 2) throw ParseError(e.line, e.value_col, "only dimension 2 is supported");
        } else {
            throw ParseError(e.line, e.key_col, "unknown key '" + e.key + "' in [fan]");
        }
    }
    if (!rays) throw ParseError(s.line, 1, "[fan] needs 'rays'");
    const std::vector<Vec> v = read_vecs(*rays);
    for (const auto& x : v)
        if (!x.is_zero() && !is_primitive(x)) throw ParseError(rays->line, rays->value_col, "ray " + to_string(x) + " is not primitive");
    Fan2D fan = build_complete_fan_2d(v);
    if (fan.rays() != v) throw ParseError(rays->line, rays->value_col, "rays must be listed anticlockwise");
    return fan;
}

std::vector<std::vector<Vec>> per_cone_slopes(const Section& s, std::size_t k) {
    std::vector<std::vector<Vec>> slopes(k);
    std::vector<bool> seen(k, false);
    for (const auto& e : s.entries) {
        const auto parts = split_key(e.key);
        if (parts.size() == 2 && parts[0] == "sheets") {
            const std::size_t c = key_index(e, parts[1], k);
            slopes[c] = read_vecs(e);
            if (slopes[c].empty()) throw ParseError(e.line, e.value_col, "cone has no sheets");
            seen[c] = true;
        }
    }
    for (std::size_t c = 0; c < k; ++c)
        if (!seen[c]) throw ParseError(s.line, 1, "missing 'sheets." + std::to_string(c + 1) + "'");
    return slopes;
}

MultiSection parse_cells(const Section& s, const Fan2D& fan, const std::vector<std::vector<Vec>>& slopes) {
    const std::size_t k = fan.size();
    MultiSection ms;
    ms.fan = fan;
    std::vector<std::size_t> first(k);
    for (std::size_t c = 0; c < k; ++c) {
        first[c] = ms.sheets.size();
        for (const auto& m : slopes[c]) ms.sheets.push_back(Sheet{c, m, 1});
    }
    std::vector<bool> lifted(k, false);
    bool any_vertex = false;
    for (const auto& e : s.entries) {
        const auto parts = split_key(e.key);
        if (parts.size() == 2 && parts[0] == "weights") {
            const std::size_t c = key_index(e, parts[1], k);
            const auto w = read_ints(e);
            if (w.size() != slopes[c].size()) throw ParseError(e.line, e.value_col, "one weight per sheet expected");
            for (std::size_t a = 0; a < w.size(); ++a) {
                if (w[a] < 1 || w[a] > 1000) throw ParseError(e.line, e.value_col, "weights must be positive");
                ms.sheets[first[c] + a].weight = static_cast<int>(w[a]);
            }
        }
    }
    for (const auto& e : s.entries) {
        const auto parts = split_key(e.key);
        if (parts.size() == 2 && parts[0] == "raylifts") {
            const std::size_t j = key_index(e, parts[1], k);
            const std::size_t cb = fan.before_cone(j), ca = fan.after_cone(j);
            Cursor c(e);
            while (!c.at_end()) {
                RayLift l;
                l.ray = j;
                l.weight = 0;
                do l.before.push_back(first[cb] + c.read_index(slopes[cb].size(), "label"));
                while (c.accept(','));
                c.expect('>');
                do l.after.push_back(first[ca] + c.read_index(slopes[ca].size(), "label"));
                while (c.accept(','));
                std::sort(l.before.begin(), l.before.end());
                std::sort(l.after.begin(), l.after.end());
                for (std::size_t x : l.before) l.weight += ms.sheets[x].weight;
                l.restriction = pair(ms.sheets[l.before.front()].slope, fan.ray(j));
                ms.ray_lifts.push_back(std::move(l));
            }
            lifted[j] = true;
        } else if (parts.size() == 2 && parts[0] == "vertex") {
            any_vertex = true;
            Cursor c(e);
            std::vector<std::size_t> block;
            while (!c.at_end()) {
                const std::size_t cone = c.read_index(k, "cone");
                c.expect(':');
                block.push_back(first[cone] + c.read_index(slopes[cone].size(), "label"));
            }
            std::sort(block.begin(), block.end());
            ms.vertex_lifts.push_back(std::move(block));
        }
    }
    for (std::size_t j = 0; j < k; ++j)
        if (!lifted[j]) throw ParseError(s.line, 1, "missing 'raylifts." + std::to_string(j + 1) + "'");
    int rank = 0;
    for (std::size_t x : ms.sheets_on(0)) rank += ms.sheets[x].weight;
    ms.rank = rank;
    if (!any_vertex) {
        std::vector<std::size_t> all(ms.sheets.size());
        std::iota(all.begin(), all.end(), 0);
        ms.vertex_lifts = {all};
        ms.vertex_lifts = components(ms);
    }
    return ms;
}

MultiSection parse_multisection(const Section& s, const Fan2D& fan) {
    const std::size_t k = fan.size();
    std::string from = s.find("match.1") ? "matching" : "cells";
    static const std::set<std::string> allowed{"from", "rank", "glue", "sheets", "weights", "match", "raylifts", "vertex"};
    for (const auto& e : s.entries) {
        const auto parts = split_key(e.key);
        if (!allowed.count(parts.front()) || (parts.size() > 2) ||
            (parts.size() == 2) != (parts.front() != "from" && parts.front() != "rank" && parts.front() != "glue"))
            throw ParseError(e.line, e.key_col, "unknown key '" + e.key + "' in [multisection]");
    }
    if (const Entry* e = s.find("from")) {
        Cursor c(*e);
        from = e->value;
        from.erase(0, from.find_first_not_of(" \t"));
        from.erase(from.find_last_not_of(" \t") + 1);
        if (from != "cells" && from != "matching" && from != "bundle") c.fail("'from' must be cells, matching or bundle");
    }
    const auto slopes = per_cone_slopes(s, k);
    MultiSection ms;
    if (from == "bundle") {
        ms = from_bundle_slopes(fan, slopes);
    } else if (from == "matching") {
        std::vector<std::vector<std::size_t>> match(k);
        std::vector<bool> seen(k, false);
        for (const auto& e : s.entries) {
            const auto parts = split_key(e.key);
            if (parts.size() == 2 && parts[0] == "match") {
                const std::size_t j = key_index(e, parts[1], k);
                Cursor c(e);
                while (!c.at_end()) match[j].push_back(c.read_index(slopes[fan.after_cone(j)].size(), "label"));
                seen[j] = true;
            }
        }
        for (std::size_t j = 0; j < k; ++j)
            if (!seen[j]) throw ParseError(s.line, 1, "missing 'match." + std::to_string(j + 1) + "'");
        bool glue = false;
        if (const Entry* e = s.find("glue")) {
            std::string v = e->value;
            v.erase(0, v.find_first_not_of(" \t"));
            v.erase(v.find_last_not_of(" \t") + 1);
            if (v != "true" && v != "false") throw ParseError(e->line, e->value_col, "'glue' must be true or false");
            glue = v == "true";
        }
        ms = from_matchings(fan, slopes, match, glue);
    } else {
        ms = parse_cells(s, fan, slopes);
    }
    if (const Entry* e = s.find("rank")) {
        Cursor c(*e);
        const Int r = c.read_int();
        c.finish();
        if (r != ms.rank) throw ParseError(e->line, e->value_col, "declared rank " + std::to_string(r) + " differs from the sheets");
    }
    return ms;
}

std::size_t slot_count(const MultiSection& ms) { return static_cast<std::size_t>(ms.rank); }

}  // namespace

Document parse_document(std::string_view text) {
    const auto sections = split_sections(text);
    const Section* fan_s = nullptr;
    const Section* ms_s = nullptr;
    const Section* kan_s = nullptr;
    const Section* wall_s = nullptr;
    for (const auto& s : sections) {
        if (s.name == "fan") fan_s = &s;
        if (s.name == "multisection") ms_s = &s;
        if (s.name == "kaneyama") kan_s = &s;
        if (s.name == "wall") wall_s = &s;
    }
    if (!fan_s) throw ParseError(1, 1, "missing [fan] section");
    Document doc;
    doc.fan = parse_fan(*fan_s);
    const std::size_t k = doc.fan.size();
    if (ms_s) doc.multisection = parse_multisection(*ms_s, doc.fan);
    if ((kan_s || wall_s) && !doc.multisection)
        throw ParseError((kan_s ? kan_s : wall_s)->line, 1, "section needs a [multisection] block");
    if (kan_s) {
        const std::size_t n = slot_count(*doc.multisection);
        for (const auto& e : kan_s->entries) {
            const auto parts = split_key(e.key);
            if (parts.size() != 3 || parts[0] != "g") throw ParseError(e.line, e.key_col, "expected key 'g.i.j'");
            const std::size_t i = key_index(e, parts[1], k), j = key_index(e, parts[2], k);
            doc.kaneyama[{i, j}] = read_matrix(e, n);
        }
    }
    if (wall_s) {
        const std::size_t n = slot_count(*doc.multisection);
        const std::size_t nv = doc.multisection->vertex_lifts.size();
        WallFactorSet ws;
        for (const auto& e : wall_s->entries) {
            const auto parts = split_key(e.key);
            if ((parts.size() != 2 && parts.size() != 3) || parts[0] != "n")
                throw ParseError(e.line, e.key_col, "expected key 'n.j' or 'n.j.v'");
            const std::size_t j = key_index(e, parts[1], k);
            const std::size_t v = parts.size() == 3 ? key_index(e, parts[2], nv) : 0;
            ws.factors.push_back(WallFactor{j, v, read_matrix(e, n)});
        }
        doc.wall = std::move(ws);
    }
    return doc;
}

Document read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

std::string emit_document(const Document& doc) {
    std::ostringstream out;
    out << kHeader << "\n\n[fan]\nrays =";
    for (const auto& v : doc.fan.rays()) out << ' ' << to_string(v);
    out << '\n';
    if (doc.multisection) {
        const MultiSection& ms = *doc.multisection;
        const std::size_t k = ms.fan.size();
        out << "\n[multisection]\nfrom = cells\nrank = " << ms.rank << '\n';
        for (std::size_t c = 0; c < k; ++c) {
            out << "sheets." << c + 1 << " =";
            for (std::size_t s : ms.sheets_on(c)) out << ' ' << to_string(ms.sheets[s].slope);
            out << '\n';
        }
        for (std::size_t c = 0; c < k; ++c) {
            const auto on = ms.sheets_on(c);
            if (std::all_of(on.begin(), on.end(), [&](std::size_t s) { return ms.sheets[s].weight == 1; })) continue;
            out << "weights." << c + 1 << " =";
            for (std::size_t s : on) out << ' ' << ms.sheets[s].weight;
            out << '\n';
        }
        for (std::size_t j = 0; j < k; ++j) {
            out << "raylifts." << j + 1 << " =";
            auto lifts = ms.lifts_on(j);
            std::sort(lifts.begin(), lifts.end(), [&](std::size_t a, std::size_t b) {
                return ms.label(ms.ray_lifts[a].before.front()) < ms.label(ms.ray_lifts[b].before.front());
            });
            for (std::size_t l : lifts) {
                const RayLift& rl = ms.ray_lifts[l];
                out << ' ';
                for (std::size_t i = 0; i < rl.before.size(); ++i) out << (i ? "," : "") << ms.label(rl.before[i]) + 1;
                out << '>';
                for (std::size_t i = 0; i < rl.after.size(); ++i) out << (i ? "," : "") << ms.label(rl.after[i]) + 1;
            }
            out << '\n';
        }
        for (std::size_t v = 0; v < ms.vertex_lifts.size(); ++v) {
            out << "vertex." << v + 1 << " =";
            for (std::size_t s : ms.vertex_lifts[v]) out << ' ' << ms.sheets[s].cone + 1 << ':' << ms.label(s) + 1;
            out << '\n';
        }
        if (!doc.kaneyama.empty()) {
            out << "\n[kaneyama]\n";
            for (const auto& [ij, m] : doc.kaneyama)
                out << "g." << ij.first + 1 << '.' << ij.second + 1 << " = " << to_string(m) << '\n';
        }
        if (doc.wall) {
            out << "\n[wall]\n";
            const bool single = ms.vertex_lifts.size() == 1;
            for (const auto& w : doc.wall->factors) {
                out << "n." << w.ray + 1;
                if (!single) out << '.' << w.vertex_lift + 1;
                out << " = " << to_string(w.n) << '\n';
            }
        }
    }
    return out.str();
}

KaneyamaData kaneyama_data(const Document& doc) {
    if (!doc.multisection) throw InvalidInputError("Kaneyama data needs a multi-section");
    const std::size_t k = doc.fan.size();
    const std::size_t n = slot_count(*doc.multisection);
    if (doc.kaneyama.empty()) throw InvalidInputError("document has no [kaneyama] block");
    bool forward = true;
    for (std::size_t i = 0; i < k; ++i) forward = forward && doc.kaneyama.count({i, (i + 1) % k});
    KaneyamaData g(k, n);
    if (forward) {
        std::vector<RatMatrix> fw;
        for (std::size_t i = 0; i < k; ++i) fw.push_back(doc.kaneyama.at({i, (i + 1) % k}));
        g = complete_from_adjacent(fw);
    } else {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (i != j && !doc.kaneyama.count({i, j}))
                    throw InvalidInputError("[kaneyama] needs g.i.(i+1) for every cone, or every ordered pair");
    }
    for (const auto& [ij, m] : doc.kaneyama) g.at(ij.first, ij.second) = m;
    return g;
}

void set_kaneyama(Document& doc, const KaneyamaData& g) {
    doc.kaneyama.clear();
    for (std::size_t i = 0; i < g.cones(); ++i)
        for (std::size_t j = 0; j < g.cones(); ++j)
            if (i != j) doc.kaneyama[{i, j}] = g.at(i, j);
}

}  // namespace tlms
