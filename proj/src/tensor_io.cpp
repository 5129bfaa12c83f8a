#include "tzeig/tensor_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tzeig/error.hpp"

namespace tzeig {

namespace {

double parse_value(const std::string& token) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    if (!token.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ParseError("not a number: '" + token + "'");
    if (!std::isfinite(v)) throw ParseError("non-finite value: '" + token + "'");
    return v;
}

std::string next_line(std::istream& in, const char* what) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    }
    throw ParseError(std::string("unexpected end of input, expected ") + what);
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

}  // namespace

CubicTensor read_tenz(std::istream& in) {
    {
        std::istringstream magic(next_line(in, "header"));
        std::string tag, version, extra;
        magic >> tag >> version;
        if (tag != "tenz" || version != "v1" || (magic >> extra)) throw ParseError("missing 'tenz v1' header");
    }
    int order = 0;
    int dim = 0;
    {
        std::istringstream shape(next_line(in, "shape line"));
        std::string k1, k2, extra;
        if (!(shape >> k1 >> order >> k2 >> dim) || k1 != "order" || k2 != "dim" || (shape >> extra)) {
            throw ParseError("expected 'order <m> dim <n>'");
        }
        if (order < 3 || dim < 1) throw ParseError("order must be >= 3 and dim >= 1");
    }
    {
        std::istringstream layout(next_line(in, "layout line"));
        std::string kind, extra;
        layout >> kind;
        if (kind != "dense" || (layout >> extra)) throw ParseError("only 'dense' layout is supported");
    }
    std::size_t expected = 0;
    try {
        expected = tensor_size(order, dim);
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    std::vector<double> values;
    values.reserve(expected);
    std::string token;
    while (in >> token) {
        if (values.size() == expected) throw ParseError("more than " + std::to_string(expected) + " values");
        values.push_back(parse_value(token));
    }
    if (values.size() != expected) {
        throw ParseError("expected " + std::to_string(expected) + " values, found " + std::to_string(values.size()));
    }
    return CubicTensor(order, dim, std::move(values));
}

CubicTensor read_tenz(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_tenz(in);
}

void write_tenz(std::ostream& out, const CubicTensor& t) {
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    out << "tenz v1\norder " << t.order() << " dim " << t.dim() << "\ndense\n";
    const auto n = static_cast<std::size_t>(t.dim());
    std::size_t col = 0;
    for (double v : t.entries()) {
        out << v << (++col % n == 0 ? '\n' : ' ');
    }
    out.precision(old);
}

void write_tenz(const std::filesystem::path& path, const CubicTensor& t) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    write_tenz(out, t);
}

Vector read_vector(std::istream& in) {
    std::vector<double> values;
    std::string token;
    while (in >> token) values.push_back(parse_value(token));
    if (values.empty()) throw ParseError("empty vector");
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Vector read_vector(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_vector(in);
}

void write_vector(std::ostream& out, const Vector& v) {
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i] << '\n';
    out.precision(old);
}

}  // namespace tzeig
