#include "epocs/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

namespace epocs {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
                tok.push_back(static_cast<char>(in.get()));
            return tok;
        }
    }
    return tok;
}

int parse_header_int(std::istream& in, const char* what) {
    const std::string tok = next_token(in);
    if (tok.empty())
        throw PgmError(PgmError::Code::bad_header, std::string("pgm: missing ") + what);
    try {
        std::size_t used = 0;
        const int value = std::stoi(tok, &used);
        if (used != tok.size() || value <= 0) throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        throw PgmError(PgmError::Code::bad_header,
                       std::string("pgm: bad ") + what + " '" + tok + "'");
    }
}

} // namespace

Signal load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PgmError(PgmError::Code::open_failed, "pgm: cannot open " + path);

    const std::string magic = next_token(in);
    if (magic != "P5" && magic != "P2")
        throw PgmError(PgmError::Code::bad_magic, "pgm: unsupported magic '" + magic + "'");

    const int width = parse_header_int(in, "width");
    const int height = parse_header_int(in, "height");
    const int maxval = parse_header_int(in, "maxval");
    if (maxval > 255)
        throw PgmError(PgmError::Code::unsupported_maxval,
                       "pgm: maxval " + std::to_string(maxval) + " not supported");

    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<double> data(n);
    if (magic == "P5") {
        in.get(); // single whitespace byte after maxval
        std::vector<unsigned char> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n)
            throw PgmError(PgmError::Code::truncated, "pgm: truncated pixel payload");
        for (std::size_t i = 0; i < n; ++i) data[i] = raw[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const std::string tok = next_token(in);
            if (tok.empty())
                throw PgmError(PgmError::Code::truncated, "pgm: truncated ascii payload");
            try {
                data[i] = std::stoi(tok);
            } catch (const std::exception&) {
                throw PgmError(PgmError::Code::bad_header, "pgm: bad sample '" + tok + "'");
            }
        }
    }
    return Signal(std::move(data), width, height);
}

void save_pgm(const std::string& path, const Signal& image) {
    if (!image.is_image())
        throw std::invalid_argument("save_pgm: signal has no image shape");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw PgmError(PgmError::Code::open_failed, "pgm: cannot write " + path);
    out << "P5\n" << image.width() << " " << image.height() << "\n255\n";
    std::vector<unsigned char> raw(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
        const double v = std::clamp(image[i], 0.0, 255.0);
        raw[i] = static_cast<unsigned char>(std::lround(v));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out)
        throw PgmError(PgmError::Code::truncated, "pgm: short write to " + path);
}

} // namespace epocs
