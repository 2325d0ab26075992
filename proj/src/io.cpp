#include "qg/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace qg::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw Error("ParseError", "field '" + path + "': " + msg);
}

// Checks the fields of one object: every field read is ticked off, finish()
// rejects the rest.
class Fields {
public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
    }
    const json& req(const std::string& name) {
        seen_.insert(name);
        auto it = j_.find(name);
        if (it == j_.end()) fail(sub(name), "missing");
        return *it;
    }
    const json* opt(const std::string& name) {
        seen_.insert(name);
        auto it = j_.find(name);
        return it == j_.end() || it->is_null() ? nullptr : &*it;
    }
    std::string sub(const std::string& name) const { return path_.empty() ? name : path_ + "." + name; }
    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) fail(sub(it.key()), "unknown field");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

std::string idx(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& array(const json& j, const std::string& path, long size = -1) {
    if (!j.is_array()) fail(path, "expected an array");
    if (size >= 0 && static_cast<long>(j.size()) != size)
        fail(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
    return j;
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

double real(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

cd complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path, "complex entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json cjson(cd z) { return json::array({z.real(), z.imag()}); }

json vec_json(const Vec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(cjson(v(i)));
    return out;
}

json mat_json(const Mat& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i).transpose()));
    return out;
}

Vec vec_of(const json& j, const std::string& path, long size = -1) {
    array(j, path, size);
    Vec v(static_cast<long>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<long>(i)) = complex(j[i], idx(path, i));
    return v;
}

Mat mat_of(const json& j, const std::string& path, long rows = -1, long cols = -1) {
    array(j, path, rows);
    if (j.empty()) return Mat(0, std::max(cols, 0L));
    const long c = cols >= 0 ? cols : static_cast<long>(array(j[0], idx(path, 0)).size());
    Mat m(static_cast<long>(j.size()), c);
    for (size_t i = 0; i < j.size(); ++i) m.row(static_cast<long>(i)) = vec_of(j[i], idx(path, i), c).transpose();
    return m;
}

std::vector<int> ints(const json& j, const std::string& path, long size = -1) {
    array(j, path, size);
    std::vector<int> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], idx(path, i)));
    return out;
}

std::vector<std::string> strings(const json& j, const std::string& path, long size = -1) {
    array(j, path, size);
    std::vector<std::string> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], idx(path, i)));
    return out;
}

RVec reals(const json& j, const std::string& path, long size = -1) {
    array(j, path, size);
    RVec out(static_cast<long>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) out(static_cast<long>(i)) = real(j[i], idx(path, i));
    return out;
}

json header(const std::string& kind) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = kind;
    return j;
}

// Reads the header of a document of the expected kind.
Fields open(const json& doc, const std::string& kind) {
    Fields f(doc, "");
    const std::string k = text(f.req("kind"), "kind");
    if (k != kind) fail("kind", "expected '" + kind + "', got '" + k + "'");
    kind_of(doc);
    f.req("format_version");
    return f;
}

void check_index(int v, int n, const std::string& path) {
    if (v < 0 || v >= n) fail(path, "index " + std::to_string(v) + " out of range 0.." + std::to_string(n - 1));
}

std::map<int, Mat> blocks_of(const json& j, const std::string& path, const std::string& matrix_field) {
    array(j, path);
    std::map<int, Mat> out;
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string p = idx(path, i);
        Fields f(j[i], p);
        const int label = integer(f.req("label"), f.sub("label"));
        if (out.count(label)) fail(f.sub("label"), "label " + std::to_string(label) + " listed twice");
        out[label] = mat_of(f.req(matrix_field), f.sub(matrix_field));
        if (out[label].rows() != out[label].cols()) fail(f.sub(matrix_field), "block is not square");
        f.finish();
    }
    return out;
}

json blocks_json(const std::map<int, Mat>& b, const std::string& matrix_field) {
    json out = json::array();
    for (const auto& [l, m] : b) {
        json e;
        e["label"] = l;
        e[matrix_field] = mat_json(m);
        out.push_back(e);
    }
    return out;
}

// One line for arrays holding only scalars or arrays of scalars.
bool inline_array(const json& j) {
    for (const auto& e : j) {
        if (e.is_object()) return false;
        if (e.is_array())
            for (const auto& x : e)
                if (x.is_structured()) return false;
    }
    return true;
}

void write(std::ostringstream& s, const json& j, int indent) {
    const std::string pad(indent, ' '), inner(indent + 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            s << "{}";
            return;
        }
        s << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) s << ",\n";
            first = false;
            s << inner << json(it.key()).dump() << ": ";
            write(s, it.value(), indent + 2);
        }
        s << "\n" << pad << "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            s << "[]";
            return;
        }
        if (inline_array(j)) {
            s << j.dump();
            return;
        }
        s << "[\n";
        for (size_t i = 0; i < j.size(); ++i) {
            if (i) s << ",\n";
            s << inner;
            write(s, j[i], indent + 2);
        }
        s << "\n" << pad << "]";
    } else {
        s << j.dump();
    }
}

}  // namespace

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IOError", "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json parse_text(const std::string& t, const std::string& origin) {
    try {
        return json::parse(t);
    } catch (const json::parse_error& e) {
        int line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < t.size(); ++i) {
            if (t[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        throw Error("ParseError", origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }
}

json read_file(const std::string& path) { return parse_text(read_text(path), path); }

std::string emit(const json& j) {
    std::ostringstream s;
    write(s, j, 0);
    s << "\n";
    return s.str();
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("IOError", "cannot write " + path);
    out << emit(j);
}

std::string kind_of(const json& doc) {
    if (!doc.is_object()) fail("<root>", "expected an object");
    auto v = doc.find("format_version");
    if (v == doc.end()) fail("format_version", "missing");
    if (integer(*v, "format_version") != kFormatVersion)
        fail("format_version", "unsupported version " + v->dump() + " (this build reads " +
                                   std::to_string(kFormatVersion) + ")");
    auto k = doc.find("kind");
    if (k == doc.end()) fail("kind", "missing");
    return text(*k, "kind");
}

std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ------------------------------------------------------------------ Hopf

json to_json(const HopfData& d) {
    const int n = d.dim;
    json j = header("hopf");
    j["dim"] = n;
    j["basis"] = d.basis;
    json mult = json::array(), comult = json::array();
    for (int i = 0; i < n; ++i) {
        json mi = json::array(), ci = json::array();
        for (int a = 0; a < n; ++a) {
            json mr = json::array(), cr = json::array();
            for (int k = 0; k < n; ++k) {
                mr.push_back(cjson(d.mult(k, i * n + a)));
                cr.push_back(cjson(d.comult(a * n + k, i)));
            }
            mi.push_back(mr);
            ci.push_back(cr);
        }
        mult.push_back(mi);
        comult.push_back(ci);
    }
    j["mult"] = mult;
    j["comult"] = comult;
    j["counit"] = vec_json(d.counit.transpose());
    j["antipode"] = mat_json(d.antipode);
    j["star"] = mat_json(d.star);
    return j;
}

HopfData hopf_from_json(const json& doc) {
    Fields f = open(doc, "hopf");
    HopfData d;
    const int n = integer(f.req("dim"), "dim");
    if (n < 1) fail("dim", "must be positive");
    d.dim = n;
    d.basis = strings(f.req("basis"), "basis", n);
    const json& mult = array(f.req("mult"), "mult", n);
    const json& comult = array(f.req("comult"), "comult", n);
    d.mult = Mat::Zero(n, n * n);
    d.comult = Mat::Zero(n * n, n);
    for (int i = 0; i < n; ++i) {
        const std::string pm = idx("mult", i), pc = idx("comult", i);
        array(mult[i], pm, n);
        array(comult[i], pc, n);
        for (int a = 0; a < n; ++a) {
            Vec mv = vec_of(mult[i][a], idx(pm, a), n), cv = vec_of(comult[i][a], idx(pc, a), n);
            for (int k = 0; k < n; ++k) {
                d.mult(k, i * n + a) = mv(k);
                d.comult(a * n + k, i) = cv(k);
            }
        }
    }
    d.counit = vec_of(f.req("counit"), "counit", n).transpose();
    d.antipode = mat_of(f.req("antipode"), "antipode", n, n);
    d.star = mat_of(f.req("star"), "star", n, n);
    f.finish();

    // unit: u e_j = e_j for all j
    Mat sys(n * n, n);
    Mat rhs(n * n, 1);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) sys(j * n + k, i) = d.mult(k, i * n + j);
            rhs(j * n + k, 0) = j == k ? 1.0 : 0.0;
        }
    Fit fit = lstsq(sys, rhs);
    if (fit.residual > 1e-9) fail("mult", "the product has no unit (residual " + std::to_string(fit.residual) + ")");
    d.unit = fit.x.col(0);
    return d;
}

// ------------------------------------------------------------------ tables

json to_json(const IrrTable& t) {
    json j = header("irr_table");
    j["labels"] = t.labels;
    j["trivial"] = t.trivial;
    j["dim"] = t.dims;
    json rho = json::array();
    for (const RVec& r : t.rho) rho.push_back(std::vector<double>(r.data(), r.data() + r.size()));
    j["rho"] = rho;
    j["conj"] = t.conj;
    if (t.has_fusion) {
        json fu = json::array();
        for (const auto& [k, m] : t.fusion)
            if (m) fu.push_back({k[0], k[1], k[2], m});
        j["fusion"] = fu;
    }
    bool any = false;
    for (const auto& c : t.conj_intertwiner) any = any || c.has_value();
    if (any) {
        json ci = json::array();
        for (const auto& c : t.conj_intertwiner) ci.push_back(c ? mat_json(*c) : json());
        j["conj_intertwiner"] = ci;
    }
    return j;
}

IrrTable table_from_json(const json& doc) {
    Fields f = open(doc, "irr_table");
    IrrTable t;
    t.labels = strings(f.req("labels"), "labels");
    const long n = static_cast<long>(t.labels.size());
    if (n == 0) fail("labels", "empty table");
    t.trivial = integer(f.req("trivial"), "trivial");
    check_index(t.trivial, static_cast<int>(n), "trivial");
    t.dims = ints(f.req("dim"), "dim", n);
    const json& rho = array(f.req("rho"), "rho", n);
    for (long a = 0; a < n; ++a) {
        if (t.dims[a] < 1) fail(idx("dim", a), "dimensions must be positive");
        t.rho.push_back(reals(rho[a], idx("rho", a), t.dims[a]));
    }
    t.conj = ints(f.req("conj"), "conj", n);
    for (long a = 0; a < n; ++a) check_index(t.conj[a], static_cast<int>(n), idx("conj", a));
    if (const json* fu = f.opt("fusion")) {
        t.has_fusion = true;
        array(*fu, "fusion");
        for (size_t i = 0; i < fu->size(); ++i) {
            std::vector<int> e = ints((*fu)[i], idx("fusion", i), 4);
            for (int k = 0; k < 3; ++k) check_index(e[k], static_cast<int>(n), idx(idx("fusion", i), k));
            if (e[3] < 0) fail(idx(idx("fusion", i), 3), "negative multiplicity");
            t.fusion[{e[0], e[1], e[2]}] = e[3];
        }
    }
    t.conj_intertwiner.assign(n, std::nullopt);
    if (const json* ci = f.opt("conj_intertwiner")) {
        array(*ci, "conj_intertwiner", n);
        for (long a = 0; a < n; ++a)
            if (!(*ci)[a].is_null())
                t.conj_intertwiner[a] = mat_of((*ci)[a], idx("conj_intertwiner", a), t.dims[a], t.dims[a]);
    }
    f.finish();
    return t;
}

json to_json(const FinSupp& a) {
    json j = header("finsupp");
    j["blocks"] = blocks_json(a.blocks, "block");
    return j;
}

FinSupp finsupp_from_json(const json& doc) {
    Fields f = open(doc, "finsupp");
    FinSupp a;
    a.blocks = blocks_of(f.req("blocks"), "blocks", "block");
    f.finish();
    return a;
}

json to_json(const PolElement& x) {
    json j = header("pol_element");
    j["coeffs"] = blocks_json(x.coeffs, "coeff");
    return j;
}

PolElement pol_from_json(const json& doc) {
    Fields f = open(doc, "pol_element");
    PolElement x;
    x.coeffs = blocks_of(f.req("coeffs"), "coeffs", "coeff");
    f.finish();
    return x;
}

// ------------------------------------------------------------------ maps

json to_json(const BlockMap& m) {
    json j = header("block_map");
    j["name"] = m.name;
    j["domain"] = m.domain;
    j["codomain"] = m.codomain;
    j["action"] = mat_json(m.action);
    return j;
}

BlockMap map_from_json(const json& doc) {
    Fields f = open(doc, "block_map");
    BlockMap m;
    if (const json* n = f.opt("name")) m.name = text(*n, "name");
    m.domain = ints(f.req("domain"), "domain");
    m.codomain = ints(f.req("codomain"), "codomain");
    for (size_t i = 0; i < m.domain.size(); ++i)
        if (m.domain[i] < 1) fail(idx("domain", i), "block sizes must be positive");
    for (size_t i = 0; i < m.codomain.size(); ++i)
        if (m.codomain[i] < 1) fail(idx("codomain", i), "block sizes must be positive");
    m.action = mat_of(f.req("action"), "action", m.codomain_dim(), m.domain_dim());
    f.finish();
    return m;
}

json operator_to_json(const Mat& m) {
    json j = header("operator");
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = mat_json(m);
    return j;
}

Mat operator_from_json(const json& doc) {
    Fields f = open(doc, "operator");
    const int r = integer(f.req("rows"), "rows"), c = integer(f.req("cols"), "cols");
    Mat m = mat_of(f.req("entries"), "entries", r, c);
    f.finish();
    return m;
}

json vector_to_json(const std::vector<cd>& v) {
    json j = header("vector");
    json vals = json::array();
    for (cd z : v) vals.push_back(cjson(z));
    j["values"] = vals;
    return j;
}

std::vector<cd> vector_from_json(const json& doc) {
    Fields f = open(doc, "vector");
    Vec v = vec_of(f.req("values"), "values");
    f.finish();
    return {v.data(), v.data() + v.size()};
}

// ------------------------------------------------------------------ fusion

json to_json(const FusionRing& r) {
    json j = header("fusion_ring");
    j["labels"] = r.labels;
    j["unit"] = r.unit;
    j["conj"] = r.conj;
    json N = json::array();
    for (const auto& [k, m] : r.N)
        if (m) N.push_back({k[0], k[1], k[2], m});
    j["N"] = N;
    j["dq"] = std::vector<double>(r.dq.data(), r.dq.data() + r.dq.size());
    if (r.max_grade) {
        j["max_grade"] = *r.max_grade;
        j["grade"] = r.grade;
    }
    return j;
}

FusionRing ring_from_json(const json& doc) {
    Fields f = open(doc, "fusion_ring");
    FusionRing r;
    r.labels = strings(f.req("labels"), "labels");
    const long n = static_cast<long>(r.labels.size());
    if (n == 0) fail("labels", "empty ring");
    r.unit = integer(f.req("unit"), "unit");
    check_index(r.unit, static_cast<int>(n), "unit");
    r.conj = ints(f.req("conj"), "conj", n);
    for (long a = 0; a < n; ++a) check_index(r.conj[a], static_cast<int>(n), idx("conj", a));
    const json& N = array(f.req("N"), "N");
    for (size_t i = 0; i < N.size(); ++i) {
        std::vector<int> e = ints(N[i], idx("N", i), 4);
        for (int k = 0; k < 3; ++k) check_index(e[k], static_cast<int>(n), idx(idx("N", i), k));
        r.N[{e[0], e[1], e[2]}] = e[3];
    }
    r.dq = reals(f.req("dq"), "dq", n);
    if (const json* g = f.opt("max_grade")) {
        r.max_grade = integer(*g, "max_grade");
        r.grade = ints(f.req("grade"), "grade", n);
    } else if (f.opt("grade")) {
        fail("grade", "only meaningful with max_grade");
    }
    f.finish();
    return r;
}

// ------------------------------------------------------------------ doubles

json to_json(const Matching& m) {
    json j = header("matching");
    j["g1"] = to_json(m.g1);
    j["g2"] = to_json(m.g2);
    j["z"] = mat_json(m.z);
    return j;
}

Matching matching_from_json(const json& doc) {
    Fields f = open(doc, "matching");
    Matching m;
    try {
        m.g1 = hopf_from_json(f.req("g1"));
        m.g2 = hopf_from_json(f.req("g2"));
    } catch (const Error& e) {
        throw Error("ParseError", std::string("in g1/g2: ") + e.what());
    }
    const long n = static_cast<long>(m.g1.dim) * m.g2.dim;
    m.z = mat_of(f.req("z"), "z", n, n);
    f.finish();
    return m;
}

// ------------------------------------------------------------------ free products

json to_json(const FreeProductTable& fp) {
    json j = header("free_product");
    json fs = json::array();
    for (const auto& t : fp.factors) fs.push_back(to_json(t));
    j["factors"] = fs;
    return j;
}

FreeProductTable free_product_from_json(const json& doc) {
    Fields f = open(doc, "free_product");
    FreeProductTable fp;
    const json& fs = array(f.req("factors"), "factors");
    if (fs.empty()) fail("factors", "need at least one factor");
    for (size_t i = 0; i < fs.size(); ++i) {
        try {
            fp.factors.push_back(table_from_json(fs[i]));
        } catch (const Error& e) {
            throw Error("ParseError", "in " + idx("factors", i) + ": " + e.what());
        }
    }
    f.finish();
    return fp;
}

json words_to_json(const std::vector<AlternatingWord>& words) {
    json j = header("words");
    json ws = json::array();
    for (const auto& w : words) {
        json letters = json::array();
        for (const auto& l : w.letters) letters.push_back({l.factor, l.label});
        ws.push_back(letters);
    }
    j["words"] = ws;
    return j;
}

std::vector<AlternatingWord> words_from_json(const json& doc) {
    Fields f = open(doc, "words");
    const json& ws = array(f.req("words"), "words");
    std::vector<AlternatingWord> out;
    for (size_t i = 0; i < ws.size(); ++i) {
        const std::string p = idx("words", i);
        array(ws[i], p);
        AlternatingWord w;
        for (size_t k = 0; k < ws[i].size(); ++k) {
            std::vector<int> fl = ints(ws[i][k], idx(p, k), 2);
            w.letters.push_back({fl[0], fl[1]});
        }
        out.push_back(w);
    }
    f.finish();
    return out;
}

}  // namespace qg::io
