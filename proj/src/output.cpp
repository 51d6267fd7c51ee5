#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "horizonlab/output.hpp"

namespace horizonlab {

std::string mask_pgm(const GridSpacetime& st, const CellSet& mask) {
    std::ostringstream os;
    os << "P2\n" << st.cols() << ' ' << st.rows() << "\n255\n";
    for (int t = st.rows() - 1; t >= 0; --t) {
        for (int x = 0; x < st.cols(); ++x) {
            const Cell c{t, x};
            int v = 0;
            if (mask.test(st.index(c))) {
                v = 255;
                for (Facet f : kFacets) {
                    const auto n = st.neighbor(c, f);
                    if (st.facet_tag(c, f) != FacetTag::None || (n && st.in_domain(*n) && !mask.test(st.index(*n))))
                        v = 128;
                }
            }
            os << (x ? " " : "") << v;
        }
        os << '\n';
    }
    return os.str();
}

std::string mask_csv(const GridSpacetime& st, const CellSet& mask) {
    std::ostringstream os;
    os << "t,x\n";
    mask.for_each([&](std::size_t i) {
        const Cell c = st.cell(i);
        os << c.t << ',' << c.x << '\n';
    });
    return os.str();
}

std::string field_csv(const GridSpacetime& st, const std::vector<double>& values) {
    std::string out;
    char buf[32];
    for (int t = 0; t < st.rows(); ++t) {
        for (int x = 0; x < st.cols(); ++x) {
            if (x) out += ',';
            const std::size_t i = st.index({t, x});
            if (!st.in_domain(i)) continue;
            std::snprintf(buf, sizeof buf, "%.17g", values.at(i));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw HorizonError("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[digest[k] >> 4];
        out += hex[digest[k] & 15];
    }
    return out;
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ParamError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

const Artifact& ArtifactWriter::write(const std::string& file, const std::string& kind, const std::string& content) {
    const auto path = dir_ / file;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw HorizonError("cannot write " + path.string());
    written_.push_back({file, kind, sha256_hex(content), content.size()});
    return written_.back();
}

}  // namespace horizonlab
