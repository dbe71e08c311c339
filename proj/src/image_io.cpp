#include "sfch/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "sfch/error.hpp"

namespace sfch {

namespace {

struct Gray8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Netpbm header tokenizer: whitespace separated, '#' comments to end of line.
class PnmHeader {
 public:
  PnmHeader(const std::vector<std::uint8_t>& bytes, const std::string& name)
      : bytes_(bytes), name_(name) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw FormatError(name_ + ": malformed PGM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) throw FormatError(name_ + ": PGM header value too large");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError(name_ + ": malformed PGM header");
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

Gray8 decode_pgm(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  PnmHeader header(bytes, name);
  header.skip(2);
  Gray8 img;
  img.width = header.next_int();
  img.height = header.next_int();
  const int maxval = header.next_int();
  if (img.width == 0 || img.height == 0) {
    throw FormatError(name + ": zero image dimension");
  }
  if (maxval != 255) {
    throw FormatError(name + ": only 8-bit PGM (maxval 255) is supported, got maxval " +
                      std::to_string(maxval));
  }
  const std::size_t offset = header.raster_offset();
  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  if (bytes.size() < offset || bytes.size() - offset < count) {
    throw FormatError(name + ": truncated PGM raster (expected " + std::to_string(count) +
                      " bytes)");
  }
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                    bytes.begin() + static_cast<std::ptrdiff_t>(offset + count));
  return img;
}

class PngImage {
 public:
  PngImage() {
    std::memset(&image_, 0, sizeof image_);
    image_.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image_); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;

  png_image* get() { return &image_; }

 private:
  png_image image_;
};

Gray8 decode_png(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  PngImage png;
  if (!png_image_begin_read_from_memory(png.get(), bytes.data(), bytes.size())) {
    throw FormatError(name + ": " + png.get()->message);
  }
  if (png.get()->format != PNG_FORMAT_GRAY) {
    throw FormatError(name + ": only 8-bit grayscale PNG without alpha is supported");
  }
  Gray8 img;
  img.width = static_cast<int>(png.get()->width);
  img.height = static_cast<int>(png.get()->height);
  if (img.width == 0 || img.height == 0) {
    throw FormatError(name + ": zero image dimension");
  }
  img.pixels.resize(PNG_IMAGE_SIZE(*png.get()));
  if (!png_image_finish_read(png.get(), nullptr, img.pixels.data(), 0, nullptr)) {
    throw FormatError(name + ": " + png.get()->message);
  }
  return img;
}

Gray8 read_gray8(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  const std::string name = path.string();
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
    return decode_pgm(bytes, name);
  }
  static constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(std::begin(kPngMagic), std::end(kPngMagic), bytes.begin())) {
    return decode_png(bytes, name);
  }
  throw FormatError(name + ": unsupported image format (expected binary PGM or PNG)");
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

void write_gray8(const Gray8& img, const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw IoError("write failed for " + path.string());
  } else if (ext == ".png") {
    PngImage png;
    png.get()->width = static_cast<png_uint_32>(img.width);
    png.get()->height = static_cast<png_uint_32>(img.height);
    png.get()->format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(png.get(), path.c_str(), 0, img.pixels.data(), 0, nullptr)) {
      throw IoError("cannot write " + path.string() + ": " + png.get()->message);
    }
  } else {
    throw IoError("unsupported output extension '" + ext + "' (use .pgm or .png)");
  }
}

}  // namespace

std::uint8_t quantize(double v) noexcept {
  const double clamped = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(255.0 * clamped + 0.5));
}

Field2D load_grayscale(const std::filesystem::path& path) {
  const Gray8 img = read_gray8(path);
  std::vector<double> data(img.pixels.size());
  std::transform(img.pixels.begin(), img.pixels.end(), data.begin(),
                 [](std::uint8_t p) { return static_cast<double>(p) / 255.0; });
  return Field2D(img.width, img.height, std::move(data));
}

void save_grayscale(const Field2D& field, const std::filesystem::path& path) {
  Gray8 img{field.width(), field.height(), std::vector<std::uint8_t>(field.size())};
  std::transform(field.data().begin(), field.data().end(), img.pixels.begin(), quantize);
  write_gray8(img, path);
}

Mask2D load_mask(const std::filesystem::path& path) {
  const Gray8 img = read_gray8(path);
  std::vector<std::uint8_t> inside(img.pixels.size());
  std::transform(img.pixels.begin(), img.pixels.end(), inside.begin(),
                 [](std::uint8_t p) { return static_cast<std::uint8_t>(p >= 128 ? 1 : 0); });
  return Mask2D(img.width, img.height, std::move(inside));
}

void save_mask(const Mask2D& mask, const std::filesystem::path& path) {
  Gray8 img{mask.width(), mask.height(), std::vector<std::uint8_t>(mask.size())};
  for (std::size_t i = 0; i < mask.size(); ++i) img.pixels[i] = mask.inside(i) ? 255 : 0;
  write_gray8(img, path);
}

}  // namespace sfch
