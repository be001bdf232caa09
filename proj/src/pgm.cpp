#include "dequip/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "dequip/errors.hpp"

namespace dequip {

namespace {

// Reads the next header token, skipping whitespace and '#' comment lines.
std::string next_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) continue;
    token.push_back(static_cast<char>(ch));
    while ((ch = in.get()) != EOF && !std::isspace(ch) && ch != '#') {
      token.push_back(static_cast<char>(ch));
    }
    if (ch == '#') in.unget();
    return token;
  }
  throw FormatError("unexpected end of PGM header");
}

int parse_int(const std::string& token, const char* what) {
  try {
    size_t pos = 0;
    int value = std::stoi(token, &pos);
    if (pos != token.size()) throw FormatError("");
    return value;
  } catch (const std::exception&) {
    throw FormatError(std::string("invalid PGM header field: ") + what);
  }
}

}  // namespace

Image load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);

  std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5") {
    throw FormatError("unsupported PGM magic '" + magic + "' in " + path);
  }
  int width = parse_int(next_token(in), "width");
  int height = parse_int(next_token(in), "height");
  int maxval = parse_int(next_token(in), "maxval");
  if (width <= 0 || height <= 0) throw FormatError("non-positive PGM dimensions in " + path);
  if (maxval <= 0 || maxval > 65535) throw FormatError("PGM maxval out of range in " + path);

  Image image(width, height);
  const double scale = 255.0 / maxval;
  const size_t n = image.size();

  if (magic == "P2") {
    for (size_t i = 0; i < n; ++i) {
      int v = 0;
      if (!(in >> v)) throw IoError("truncated P2 payload in " + path);
      if (v < 0 || v > maxval) throw FormatError("P2 sample out of range in " + path);
      image.data[i] = v * scale;
    }
  } else {
    // single whitespace byte after maxval, then raw samples
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(n * bytes);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<size_t>(in.gcount()) != buf.size()) {
      throw IoError("truncated P5 payload in " + path);
    }
    for (size_t i = 0; i < n; ++i) {
      int v = bytes == 1 ? buf[i] : (buf[2 * i] << 8) | buf[2 * i + 1];  // big-endian
      if (v > maxval) throw FormatError("P5 sample out of range in " + path);
      image.data[i] = v * scale;
    }
  }
  return image;
}

void save_pgm(const Image& image, const std::string& path) {
  validate_image(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  std::vector<unsigned char> buf(image.size());
  for (size_t i = 0; i < image.size(); ++i) {
    double v = std::floor(image.data[i] + 0.5);  // half-up
    if (v < 0.0) v = 0.0;
    if (v > 255.0) v = 255.0;
    buf[i] = static_cast<unsigned char>(v);
  }
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace dequip
