#include "mvtreelet/matrix_io.hpp"

#include "mvtreelet/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace mvt {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        throw Error(ErrorKind::Io, "failed to render a double value");
    }
    return std::string(buf, ptr);
}

Matrix parse_matrix_csv(const std::string& text, const std::string& origin) {
    std::vector<double> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::size_t fields = 0;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            const std::size_t end = comma == std::string::npos ? line.size() : comma;

            std::size_t begin = pos;
            while (begin < end && (line[begin] == ' ' || line[begin] == '\t')) ++begin;
            std::size_t stop = end;
            while (stop > begin && (line[stop - 1] == ' ' || line[stop - 1] == '\t')) --stop;

            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(line.data() + begin, line.data() + stop, value);
            if (ec != std::errc() || ptr != line.data() + stop || begin == stop) {
                throw Error(ErrorKind::Parse, origin + ": line " + std::to_string(line_no) +
                                                  ", field " + std::to_string(fields + 1) +
                                                  ": cannot parse \"" +
                                                  line.substr(begin, stop - begin) + "\"");
            }
            if (!std::isfinite(value)) {
                throw Error(ErrorKind::NonFinite, origin + ": line " + std::to_string(line_no) +
                                                      ", field " + std::to_string(fields + 1) +
                                                      ": non-finite value");
            }
            entries.push_back(value);
            ++fields;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }

        if (rows == 0) {
            cols = fields;
        } else if (fields != cols) {
            throw Error(ErrorKind::Parse, origin + ": line " + std::to_string(line_no) + " has " +
                                              std::to_string(fields) + " fields, expected " +
                                              std::to_string(cols));
        }
        ++rows;
    }

    if (rows == 0) {
        throw Error(ErrorKind::Parse, origin + ": no matrix rows found");
    }
    return Matrix(rows, cols, std::move(entries));
}

Matrix read_matrix(const std::filesystem::path& path) {
    if (std::filesystem::is_directory(path)) {
        throw Error(ErrorKind::InputNotFound, "expected a file, got a directory: " + path.string());
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw Error(ErrorKind::InputNotFound, "cannot open input file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_matrix_csv(buffer.str(), path.string());
}

std::string matrix_to_csv(const Matrix& m) {
    if (m.empty()) {
        throw Error(ErrorKind::Dimension, "cannot serialize an empty matrix");
    }
    std::string out;
    out.reserve(m.size() * 8);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out.push_back(',');
            out += format_double(m(i, j));
        }
        out.push_back('\n');
    }
    return out;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
    const std::string csv = matrix_to_csv(m);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorKind::Io, "cannot open output file: " + path.string());
    }
    file.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    if (!file) {
        throw Error(ErrorKind::Io, "failed writing: " + path.string());
    }
}

void write_heatmap(const std::filesystem::path& path, const Matrix& m) {
    if (m.empty()) {
        throw Error(ErrorKind::Dimension, "cannot render an empty matrix");
    }
    const double lo = m.min_entry();
    const double hi = m.max_entry();
    const double span = hi - lo;

    std::string bytes;
    bytes.reserve(m.size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::uint8_t pixel = 128;
            if (span > 0.0) {
                pixel = static_cast<std::uint8_t>(
                    std::lround((m(i, j) - lo) / span * 255.0));
            }
            bytes.push_back(static_cast<char>(pixel));
        }
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorKind::Io, "cannot open output file: " + path.string());
    }
    file << "P5\n" << m.cols() << " " << m.rows() << "\n255\n";
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!file) {
        throw Error(ErrorKind::Io, "failed writing: " + path.string());
    }
}

} // namespace mvt
