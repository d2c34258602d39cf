#include "cpb/stripe_io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace cpb {

namespace {

int hex_width(int degree) { return (degree + 3) / 4; }

std::string hex_symbol(Elem value, int width) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%0*x", std::clamp(width, 1, 4),
                  static_cast<unsigned>(value));
    return buf;
}

}  // namespace

void write_stripe(std::ostream& os, const StripeFile& file) {
    const CodeParams& p = file.params;
    char header[192];
    std::snprintf(header, sizeof(header),
                  "{\"n\":%d,\"k\":%d,\"L\":%d,\"m\":%d,\"poly\":\"0x%x\","
                  "\"stage\":\"%s\",\"orig_len\":%llu}",
                  p.n, p.k, p.L, p.gf().degree(), p.gf().reduction_poly(),
                  stage_name(file.stripe.stage()),
                  static_cast<unsigned long long>(file.orig_len));
    os << header << "\n";
    const int width = hex_width(p.gf().degree());
    for (int node = 1; node <= p.n; ++node) {
        for (int col = 1; col <= p.r; ++col) {
            if (col > 1) os << ' ';
            os << hex_symbol(file.stripe.at(node, col), width);
        }
        os << "\n";
    }
}

std::string write_stripe(const StripeFile& file) {
    std::ostringstream os;
    write_stripe(os, file);
    return os.str();
}

StripeFile read_stripe(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw DataError("stripe file: missing header line");

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(header);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("stripe file: bad header: ") + e.what());
    }
    StripeFile file;
    try {
        const int n = j.at("n").get<int>();
        const int k = j.at("k").get<int>();
        const int L = j.at("L").get<int>();
        const int m = j.at("m").get<int>();
        const std::string poly_str = j.at("poly").get<std::string>();
        const std::uint32_t poly =
            static_cast<std::uint32_t>(std::stoul(poly_str, nullptr, 16));
        file.params = make_params(n, k, L, gf::build_field(m, poly));
        file.stripe = CodedStripe(n, k, stage_from_name(j.at("stage").get<std::string>()));
        file.orig_len = j.at("orig_len").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("stripe file: bad header field: ") + e.what());
    }

    const CodeParams& p = file.params;
    const int width = hex_width(p.gf().degree());
    for (int node = 1; node <= p.n; ++node) {
        std::string line;
        if (!std::getline(is, line)) {
            std::ostringstream os;
            os << "stripe file: missing row for node " << node;
            throw DataError(os.str());
        }
        std::istringstream tokens(line);
        for (int col = 1; col <= p.r; ++col) {
            std::string tok;
            if (!(tokens >> tok) || static_cast<int>(tok.size()) != width) {
                std::ostringstream os;
                os << "stripe file: node " << node << " column " << col
                   << ": expected a " << width << "-digit hex symbol";
                throw DataError(os.str());
            }
            unsigned long value = 0;
            std::size_t used = 0;
            try {
                value = std::stoul(tok, &used, 16);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || value >= p.gf().order()) {
                std::ostringstream os;
                os << "stripe file: node " << node << " column " << col
                   << ": symbol '" << tok << "' not in the field";
                throw DataError(os.str());
            }
            file.stripe.at(node, col) = static_cast<Elem>(value);
        }
        std::string extra;
        if (tokens >> extra) {
            std::ostringstream os;
            os << "stripe file: node " << node << ": trailing token '" << extra << "'";
            throw DataError(os.str());
        }
    }
    return file;
}

StripeFile read_stripe_string(const std::string& text) {
    std::istringstream is(text);
    return read_stripe(is);
}

std::string write_repair_report(const RepairReport& report) {
    std::ostringstream os;
    os << "failed_node: " << report.failed_node << "\n";
    os << "bandwidth: " << report.bandwidth << "\n";
    os << "predicted: " << report.predicted << "\n";
    os << "recovered:";
    for (Elem v : report.recovered)
        os << " " << hex_symbol(v, 4);
    os << "\n";
    os << "downloads:\n";
    std::vector<Download> sorted = report.downloads;
    std::sort(sorted.begin(), sorted.end(), [](const Download& a, const Download& b) {
        return std::tie(a.node, a.col) < std::tie(b.node, b.col);
    });
    for (const auto& d : sorted)
        os << "  " << d.node << " " << d.col << " " << hex_symbol(d.value, 4) << "\n";
    return os.str();
}

}  // namespace cpb
