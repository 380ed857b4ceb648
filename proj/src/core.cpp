#include "hdperm/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace hdp {

// ---------------------------------------------------------------- OrderType

OrderType::OrderType(std::initializer_list<int> bits)
    : OrderType(std::span<const int>(bits.begin(), bits.size())) {}

OrderType::OrderType(std::span<const int> bits) {
    if (bits.empty() || bits.size() > 31)
        throw std::invalid_argument("order type length must be in [1, 31]");
    length_ = static_cast<int>(bits.size());
    for (int i = 0; i < length_; ++i) {
        const int b = bits[static_cast<std::size_t>(i)];
        if (b != 0 && b != 1) throw std::invalid_argument("order type bits must be 0 or 1");
        if (b) mask_ |= 1u << i;
    }
}

OrderType OrderType::from_mask(std::uint32_t mask, int length) {
    if (length < 1 || length > 31) throw std::invalid_argument("order type length must be in [1, 31]");
    if (mask >> length) throw std::invalid_argument("order type mask wider than length");
    OrderType c;
    c.mask_ = mask;
    c.length_ = length;
    return c;
}

OrderType OrderType::ones(int length) {
    return from_mask((1u << length) - 1, length);
}

OrderType OrderType::ones_except_last(int length) {
    return from_mask((1u << (length - 1)) - 1, length);
}

OrderType OrderType::parse(const std::string& bits) {
    std::vector<int> v;
    v.reserve(bits.size());
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("order type string must be over {0,1}");
        v.push_back(ch - '0');
    }
    return OrderType(std::span<const int>(v));
}

bool OrderType::increasing(int coordinate) const {
    if (coordinate < 1 || coordinate > length_) throw std::out_of_range("order type coordinate");
    return (mask_ >> (coordinate - 1)) & 1u;
}

OrderType OrderType::complement() const {
    return from_mask(~mask_ & ((1u << length_) - 1), length_);
}

OrderType OrderType::with_flipped(int coordinate) const {
    if (coordinate < 1 || coordinate > length_) throw std::out_of_range("order type coordinate");
    return from_mask(mask_ ^ (1u << (coordinate - 1)), length_);
}

OrderType OrderType::composed(std::span<const int> sigma) const {
    if (static_cast<int>(sigma.size()) != length_)
        throw std::invalid_argument("sigma length does not match order type");
    std::uint32_t m = 0;
    for (int i = 0; i < length_; ++i) {
        const int src = sigma[static_cast<std::size_t>(i)];
        if (src < 1 || src > length_) throw std::invalid_argument("sigma entry out of range");
        if ((mask_ >> (src - 1)) & 1u) m |= 1u << i;
    }
    return from_mask(m, length_);
}

std::string OrderType::to_string() const {
    std::string s(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i)
        if ((mask_ >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

// ------------------------------------------------------------------- report

std::string ValidationReport::describe() const {
    if (ok) return "ok";
    std::ostringstream os;
    for (std::size_t v = 0; v < violations.size(); ++v) {
        if (v) os << "; ";
        const LineViolation& lv = violations[v];
        os << "axis " << lv.axis << " line at (";
        for (std::size_t i = 0; i < lv.anchor.size(); ++i) {
            if (i) os << ",";
            if (static_cast<int>(i) + 1 == lv.axis)
                os << "*";
            else
                os << lv.anchor[i];
        }
        os << ") is not a permutation of [n]";
    }
    return os.str();
}

// -------------------------------------------------------- PermutationArray

std::size_t table_cells(int k, int n) {
    if (k < 1) throw std::invalid_argument("dimension k must be >= 1");
    if (n < 1) throw std::invalid_argument("order n must be >= 1");
    std::size_t cells = 1;
    for (int i = 0; i < k; ++i) {
        if (cells > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(n))
            throw std::invalid_argument("table size n^k overflows");
        cells *= static_cast<std::size_t>(n);
    }
    return cells;
}

PermutationArray::PermutationArray(int k, int n, std::vector<Coord> table)
    : k_(k), n_(n), f_(std::move(table)) {
    const std::size_t cells = table_cells(k, n);
    if (f_.size() != cells)
        throw std::invalid_argument("table has " + std::to_string(f_.size()) + " entries, expected n^k = " +
                                    std::to_string(cells));
    for (Coord v : f_)
        if (v < 1 || v > n)
            throw std::invalid_argument("table entry " + std::to_string(v) + " outside [1, n]");
}

std::size_t PermutationArray::index_of(std::span<const Coord> position) const {
    if (static_cast<int>(position.size()) != k_) throw std::invalid_argument("position arity != k");
    std::size_t idx = 0;
    for (int i = 0; i < k_; ++i) {
        const Coord c = position[static_cast<std::size_t>(i)];
        if (c < 1 || c > n_) throw std::out_of_range("position coordinate outside [1, n]");
        idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c - 1);
    }
    return idx;
}

void PermutationArray::position_at(std::size_t index, std::span<Coord> out) const {
    for (int i = k_ - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<Coord>(index % static_cast<std::size_t>(n_)) + 1;
        index /= static_cast<std::size_t>(n_);
    }
}

std::vector<Coord> PermutationArray::position_at(std::size_t index) const {
    std::vector<Coord> pos(static_cast<std::size_t>(k_));
    position_at(index, pos);
    return pos;
}

// ---------------------------------------------------------------- validate

ValidationReport validate(const PermutationArray& p) {
    const int k = p.k();
    const int n = p.n();
    ValidationReport report;

    // Stamp array instead of clearing a seen-set per line.
    std::vector<std::uint32_t> stamp(static_cast<std::size_t>(n) + 1, 0);
    std::uint32_t tick = 0;

    std::size_t inner = 1;  // n^(k - axis) once axis is fixed
    for (int axis = k; axis >= 1; --axis) {
        const std::size_t stride = inner;            // distance between cells of one line
        const std::size_t block = inner * static_cast<std::size_t>(n);
        const std::size_t outer = p.size() / block;  // n^(axis-1)
        bool found = false;
        for (std::size_t o = 0; o < outer && !found; ++o) {
            for (std::size_t in = 0; in < inner && !found; ++in) {
                const std::size_t base = o * block + in;
                ++tick;
                for (int t = 0; t < n; ++t) {
                    const Coord v = p.value_at(base + static_cast<std::size_t>(t) * stride);
                    if (stamp[static_cast<std::size_t>(v)] == tick) {
                        LineViolation lv;
                        lv.axis = axis;
                        lv.anchor = p.position_at(base);
                        report.violations.push_back(std::move(lv));
                        found = true;
                        break;
                    }
                    stamp[static_cast<std::size_t>(v)] = tick;
                }
            }
        }
        inner = block;
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const LineViolation& a, const LineViolation& b) { return a.axis < b.axis; });
    report.ok = report.violations.empty();
    return report;
}

// ----------------------------------------------------------------- support

std::vector<SupportPoint> support(const PermutationArray& p) {
    const int k = p.k();
    std::vector<SupportPoint> pts;
    pts.reserve(p.size());
    std::vector<Coord> pos(static_cast<std::size_t>(k), 1);
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        SupportPoint pt(static_cast<std::size_t>(k) + 1);
        std::copy(pos.begin(), pos.end(), pt.begin());
        pt.back() = p.value_at(idx);
        pts.push_back(std::move(pt));
        // lexicographic odometer
        for (int i = k - 1; i >= 0; --i) {
            if (++pos[static_cast<std::size_t>(i)] <= p.n()) break;
            pos[static_cast<std::size_t>(i)] = 1;
        }
    }
    return pts;
}

// ----------------------------------------------------------- group actions

namespace {

void require_permutation_of(std::span<const int> sigma, int m, const char* what) {
    if (static_cast<int>(sigma.size()) != m)
        throw std::invalid_argument(std::string(what) + " must have length " + std::to_string(m));
    std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
    for (int v : sigma) {
        if (v < 1 || v > m || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument(std::string(what) + " is not a permutation of [" + std::to_string(m) + "]");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

}  // namespace

PermutationArray permute_coordinates(const PermutationArray& p, std::span<const int> sigma) {
    const int k = p.k();
    const int n = p.n();
    require_permutation_of(sigma, k + 1, "sigma");

    std::vector<Coord> g(p.size(), 0);
    std::vector<Coord> pos(static_cast<std::size_t>(k), 1);
    std::vector<Coord> pt(static_cast<std::size_t>(k) + 1);
    std::vector<Coord> img(static_cast<std::size_t>(k) + 1);
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        std::copy(pos.begin(), pos.end(), pt.begin());
        pt.back() = p.value_at(idx);
        for (int i = 0; i <= k; ++i)
            img[static_cast<std::size_t>(i)] = pt[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)] - 1)];
        const std::size_t dst = p.index_of(std::span<const Coord>(img.data(), static_cast<std::size_t>(k)));
        g[dst] = img.back();
        for (int i = k - 1; i >= 0; --i) {
            if (++pos[static_cast<std::size_t>(i)] <= n) break;
            pos[static_cast<std::size_t>(i)] = 1;
        }
    }
    return PermutationArray(k, n, std::move(g));
}

PermutationArray permute_values(const PermutationArray& p, int coordinate, std::span<const Coord> pi) {
    const int k = p.k();
    const int n = p.n();
    if (coordinate < 1 || coordinate > k + 1) throw std::invalid_argument("coordinate outside [1, k+1]");
    {
        std::vector<int> as_int(pi.begin(), pi.end());
        require_permutation_of(as_int, n, "pi");
    }

    std::vector<Coord> g(p.size());
    if (coordinate == k + 1) {
        for (std::size_t idx = 0; idx < p.size(); ++idx)
            g[idx] = pi[static_cast<std::size_t>(p.value_at(idx) - 1)];
        return PermutationArray(k, n, std::move(g));
    }

    std::size_t stride = 1;
    for (int i = coordinate; i < k; ++i) stride *= static_cast<std::size_t>(n);

    std::vector<Coord> pos(static_cast<std::size_t>(k), 1);
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        const Coord a = pos[static_cast<std::size_t>(coordinate - 1)];
        const Coord b = pi[static_cast<std::size_t>(a - 1)];
        const std::size_t dst = idx + (static_cast<std::size_t>(b) - static_cast<std::size_t>(a)) * stride;
        g[dst] = p.value_at(idx);
        for (int i = k - 1; i >= 0; --i) {
            if (++pos[static_cast<std::size_t>(i)] <= n) break;
            pos[static_cast<std::size_t>(i)] = 1;
        }
    }
    return PermutationArray(k, n, std::move(g));
}

PermutationArray reverse_coordinate(const PermutationArray& p, int coordinate) {
    std::vector<Coord> pi(static_cast<std::size_t>(p.n()));
    for (int a = 1; a <= p.n(); ++a) pi[static_cast<std::size_t>(a - 1)] = static_cast<Coord>(1 + p.n() - a);
    return permute_values(p, coordinate, pi);
}

// --------------------------------------------------------------------- I/O

PermutationArray read_array(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw FormatError(FormatError::Kind::Header, "empty input, expected header line");

    std::istringstream hs(header);
    std::string magic, version, ktok, ntok;
    if (!(hs >> magic >> version >> ktok >> ntok) || magic != "hdperm" || version != "v1" ||
        ktok.rfind("k=", 0) != 0 || ntok.rfind("n=", 0) != 0)
        throw FormatError(FormatError::Kind::Header, "malformed header: '" + header + "'");
    std::string trailing;
    if (hs >> trailing) throw FormatError(FormatError::Kind::Header, "malformed header: '" + header + "'");

    int k = 0, n = 0;
    try {
        std::size_t used = 0;
        k = std::stoi(ktok.substr(2), &used);
        if (used != ktok.size() - 2) throw std::invalid_argument("junk");
        n = std::stoi(ntok.substr(2), &used);
        if (used != ntok.size() - 2) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
        throw FormatError(FormatError::Kind::Header, "malformed header: '" + header + "'");
    }
    if (k < 1 || n < 1) throw FormatError(FormatError::Kind::Header, "header dimensions must be >= 1");

    std::size_t cells = 0;
    try {
        cells = table_cells(k, n);
    } catch (const std::exception& e) {
        throw FormatError(FormatError::Kind::Header, e.what());
    }

    std::vector<Coord> table;
    table.reserve(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        long long v = 0;
        if (!(in >> v)) {
            if (in.eof())
                throw FormatError(FormatError::Kind::Count,
                                  "expected " + std::to_string(cells) + " entries, found " + std::to_string(i));
            throw FormatError(FormatError::Kind::Count, "entry " + std::to_string(i + 1) + " is not an integer");
        }
        if (v < 1 || v > n)
            throw FormatError(FormatError::Kind::Range,
                              "entry " + std::to_string(i + 1) + " = " + std::to_string(v) + " outside [1, n]");
        table.push_back(static_cast<Coord>(v));
    }
    std::string extra;
    if (in >> extra) throw FormatError(FormatError::Kind::Count, "trailing data after " + std::to_string(cells) + " entries");

    return PermutationArray(k, n, std::move(table));
}

void write_array(std::ostream& out, const PermutationArray& p) {
    out << "hdperm v1 k=" << p.k() << " n=" << p.n() << "\n";
    const std::size_t row = static_cast<std::size_t>(p.n());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out << p.value_at(i);
        out << ((i % row + 1 == row) ? '\n' : ' ');
    }
}

PermutationArray load_array(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_array(in);
}

void save_array(const std::string& path, const PermutationArray& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_array(out, p);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace hdp
