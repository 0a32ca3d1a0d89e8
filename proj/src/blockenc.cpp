#include "qelast/blockenc.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qelast/error.hpp"
#include "qelast/fem/shape.hpp"

namespace qelast {

double CirculantBand::alpha() const {
    double a = 0.0;
    for (double c : coeffs)
        a += std::abs(c);
    return a;
}

std::string CirculantBand::label() const {
    std::ostringstream s;
    s << (order == 1 ? "alpha" : "beta") << "(" << (kind == BandKind::I ? "I" : "II") << ","
      << g << ")";
    return s.str();
}

std::vector<double> CirculantBand::apply(const std::vector<double> &x) const {
    require(static_cast<int>(x.size()) == size, ErrorKind::dimension_mismatch,
            "band size does not match vector");
    std::vector<double> y(x.size(), 0.0);
    for (int i = 0; i < size; ++i)
        for (std::size_t r = 0; r < coeffs.size(); ++r)
            y[i] += coeffs[r] * x[(i + r) % size];
    return y;
}

bool CirculantBand::operator==(const CirculantBand &o) const {
    return size == o.size && coeffs == o.coeffs;
}

CirculantBand build_circulant(int order, BandKind kind, int g, int size) {
    require(order == 1 || order == 2, ErrorKind::invalid_argument, "order must be 1 or 2");
    require(g == 0 || g == 1, ErrorKind::invalid_argument, "Gauss index must be 0 or 1");
    const ShapeValues sv = shape_values(order, g);
    CirculantBand b = make_band(kind == BandKind::I ? sv.values : sv.derivatives, size);
    b.order = order;
    b.kind = kind;
    b.g = g;
    return b;
}

CirculantBand make_band(std::vector<double> coeffs, int size) {
    require(coeffs.size() == 2 || coeffs.size() == 3, ErrorKind::invalid_argument,
            "only 2- and 3-band circulants are supported");
    require(size >= 1, ErrorKind::invalid_argument, "band size must be positive");
    CirculantBand b;
    b.size = size;
    b.coeffs = std::move(coeffs);
    b.order = b.coeffs.size() == 2 ? 1 : 2;
    require(b.alpha() > 0.0, ErrorKind::invalid_argument, "all-zero band");
    return b;
}

int encode_ancilla_count(const CirculantBand &band) {
    return band.coeffs.size() == 2 ? 2 : 3;
}

namespace {

// RY angle with cos(t/2) = sqrt(a), sin(t/2) = sqrt(1 - a).
double split_angle(double w0, double w1) {
    const double s = w0 + w1;
    if (s <= 0.0)
        return 0.0;
    return 2.0 * std::atan2(std::sqrt(w1), std::sqrt(w0));
}

} // namespace

void append_block_encoding(Circuit &c, const CirculantBand &band, const std::vector<int> &reg,
                           const std::vector<int> &anc, const std::vector<int> &controls,
                           AdderKind adder) {
    require(static_cast<int>(anc.size()) == encode_ancilla_count(band),
            ErrorKind::invalid_argument, "wrong encode ancilla count");
    require((std::size_t{1} << reg.size()) == static_cast<std::size_t>(band.size),
            ErrorKind::dimension_mismatch, "band size does not match register");
    const Segment saved = c.segment;
    c.segment = Segment::blockenc;
    const auto &k = band.coeffs;
    const double a = band.alpha();
    const bool three = k.size() == 3;
    const int data = anc.back();

    auto with = [&](std::vector<int> extra) {
        extra.insert(extra.end(), controls.begin(), controls.end());
        return extra;
    };

    Circuit prep(c.num_qubits);
    prep.segment = Segment::blockenc;
    const double t0 = split_angle(std::abs(k[0]) / a, (a - std::abs(k[0])) / a);
    prep.ry(anc[0], t0);
    double t1 = 0.0;
    if (three) {
        t1 = split_angle(std::abs(k[1]), std::abs(k[2]));
        prep.cry(anc[0], anc[1], t1);
    }
    c.append(prep, Circuit::identity_map(c.num_qubits), controls);

    // Index states: r=0 <-> all index bits 0, r=1 <-> bit0, r=2 <-> bit0 and bit1.
    append_shift(c, reg, false, with({anc[0]}), adder);
    if (three)
        append_shift(c, reg, false, with({anc[1]}), adder);
    c.segment = Segment::blockenc;

    for (std::size_t r = 0; r < k.size(); ++r) {
        if (k[r] >= 0.0)
            continue;
        // RY(2 pi) = -I on the data qubit, selected on index r
        std::vector<int> flip;
        if (r == 0)
            flip.push_back(anc[0]);
        if (three && r <= 1)
            flip.push_back(anc[1]);
        for (int q : flip)
            c.x(q);
        std::vector<int> sel = {anc[0]};
        if (three)
            sel.push_back(anc[1]);
        c.add(GateKind::RY, data, 2.0 * std::numbers::pi, with(sel));
        for (int q : flip)
            c.x(q);
    }

    c.append(adjoint(prep), Circuit::identity_map(c.num_qubits), controls);
    c.segment = saved;
}

BlockEncoding build_block_encoding(const CirculantBand &band, AdderKind adder) {
    int n = 0;
    while ((1 << n) < band.size)
        ++n;
    require((1 << n) == band.size, ErrorKind::invalid_argument, "band size must be 2^n");
    const int na = encode_ancilla_count(band);
    const int pool = adder_pool_size(n, adder);
    BlockEncoding be;
    be.n = n;
    be.matrix = band;
    be.subnormalization = band.alpha();
    be.circuit = Circuit(n + na + pool, "U[" + band.label() + "]");
    for (int i = 0; i < na; ++i)
        be.encode_ancillas.push_back(n + i);
    for (int i = 0; i < pool; ++i)
        be.circuit.work_pool.push_back(n + na + i);
    append_block_encoding(be.circuit, band, Circuit::identity_map(n), be.encode_ancillas, {},
                          adder);
    return be;
}

} // namespace qelast
