// Copyright 2026 the imdeg authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "imdeg/error.hpp"
#include "imdeg/image.hpp"

namespace imdeg {
namespace {

constexpr float kInv255 = 1.0f / 255.0f;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw_error(ErrorCode::kIo, "cannot open '" + path + "' for " +
                                    (mode[0] == 'r' ? "reading" : "writing"));
  }
  return f;
}

// ---------------------------------------------------------------------------
// PNG
// ---------------------------------------------------------------------------

void png_error_to_exception(png_structp png, png_const_charp msg) {
  (void)png;
  throw_error(ErrorCode::kFormat, std::string("png: ") + msg);
}

void png_warning_ignore(png_structp, png_const_charp) {}

Image load_png_file(std::FILE* f, const std::string& path) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_to_exception, png_warning_ignore);
  if (!png) throw_error(ErrorCode::kInternal, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw_error(ErrorCode::kInternal, "png_create_info_struct failed");
  }

  Image img;
  std::vector<png_bytep> row_ptrs;
  std::vector<std::uint8_t> rows;
  try {
    png_init_io(png, f);
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int color_type = png_get_color_type(png, info);
    int bit_depth = png_get_bit_depth(png, info);

    // Normalize every PNG variant to 8-bit RGB: palettes expanded, 16-bit
    // scaled down, grayscale replicated, alpha dropped against nothing
    // (straight strip, the pipeline has no background to composite onto).
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (bit_depth == 16) png_set_scale_16(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
      png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    if (png_get_channels(png, info) != 3 || png_get_bit_depth(png, info) != 8) {
      throw_error(ErrorCode::kFormat, "png: '" + path + "' did not normalize to 8-bit RGB");
    }

    img = Image(static_cast<int>(w), static_cast<int>(h));
    rows.resize(static_cast<std::size_t>(w) * h * 3);
    row_ptrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
      row_ptrs[y] = rows.data() + static_cast<std::size_t>(y) * w * 3;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);

  for (std::size_t i = 0; i < rows.size(); ++i) img.data[i] = rows[i] * kInv255;
  return img;
}

// ---------------------------------------------------------------------------
// JPEG
// ---------------------------------------------------------------------------

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit_longjmp(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void jpeg_emit_message_quiet(j_common_ptr, int) {}

Image decode_jpeg(jpeg_decompress_struct* cinfo, JpegErrorMgr* err) {
  // The caller has set the data source.  On decode error libjpeg longjmps
  // back to the caller's setjmp site, so no C++ objects with destructors may
  // live in this scope across libjpeg calls; buffers are plain vectors owned
  // by the returned image or sized up-front.
  jpeg_read_header(cinfo, TRUE);
  cinfo->out_color_space = JCS_RGB;
  jpeg_start_decompress(cinfo);

  int w = static_cast<int>(cinfo->output_width);
  int h = static_cast<int>(cinfo->output_height);
  if (w <= 0 || h <= 0) {
    (void)err;
    throw_error(ErrorCode::kFormat, "jpeg: empty image");
  }
  Image img(w, h);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(w) * 3);
  JSAMPROW row_ptr = row.data();
  while (cinfo->output_scanline < cinfo->output_height) {
    int y = static_cast<int>(cinfo->output_scanline);
    jpeg_read_scanlines(cinfo, &row_ptr, 1);
    float* dst = img.row(y);
    for (std::size_t i = 0; i < row.size(); ++i) dst[i] = row[i] * kInv255;
  }
  jpeg_finish_decompress(cinfo);
  return img;
}

Image load_jpeg_file(std::FILE* f, const std::string& path) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit_longjmp;
  err.pub.emit_message = jpeg_emit_message_quiet;

  jpeg_create_decompress(&cinfo);
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw_error(ErrorCode::kFormat, "jpeg: '" + path + "': " + err.message);
  }
  jpeg_stdio_src(&cinfo, f);
  Image img;
  try {
    img = decode_jpeg(&cinfo, &err);
  } catch (...) {
    jpeg_destroy_decompress(&cinfo);
    throw;
  }
  jpeg_destroy_decompress(&cinfo);
  return img;
}

std::vector<std::uint8_t> to_bytes(const Image& img) {
  std::vector<std::uint8_t> bytes(img.sample_count());
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = quantize8(img.data[i]);
  return bytes;
}

void check_savable(const Image& img) {
  if (img.width <= 0 || img.height <= 0 ||
      img.data.size() != static_cast<std::size_t>(img.width) * img.height * Image::kChannels) {
    throw_error(ErrorCode::kShape, "cannot encode image with invalid shape " +
                                       std::to_string(img.width) + "x" + std::to_string(img.height));
  }
}

}  // namespace

Image load_image(const std::string& path) {
  FilePtr f = open_file(path, "rb");
  unsigned char sig[8] = {0};
  std::size_t got = std::fread(sig, 1, sizeof(sig), f.get());
  std::rewind(f.get());
  if (got >= 8 && png_sig_cmp(sig, 0, 8) == 0) return load_png_file(f.get(), path);
  if (got >= 2 && sig[0] == 0xFF && sig[1] == 0xD8) return load_jpeg_file(f.get(), path);
  throw_error(ErrorCode::kFormat, "'" + path + "' is neither PNG nor JPEG");
}

void save_png(const Image& img, const std::string& path) {
  check_savable(img);
  std::vector<std::uint8_t> bytes = to_bytes(img);
  FilePtr f = open_file(path, "wb");

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_to_exception, png_warning_ignore);
  if (!png) throw_error(ErrorCode::kInternal, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw_error(ErrorCode::kInternal, "png_create_info_struct failed");
  }
  try {
    png_init_io(png, f.get());
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y) {
      png_write_row(png, const_cast<png_bytep>(bytes.data() + static_cast<std::size_t>(y) * img.width * 3));
    }
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

void save_jpeg(const Image& img, const std::string& path, int quality) {
  check_savable(img);
  if (quality < 1 || quality > 100) {
    throw_error(ErrorCode::kArgument, "jpeg quality must be in [1, 100], got " + std::to_string(quality));
  }
  std::vector<std::uint8_t> bytes = to_bytes(img);
  FilePtr f = open_file(path, "wb");

  jpeg_compress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit_longjmp;
  err.pub.emit_message = jpeg_emit_message_quiet;
  jpeg_create_compress(&cinfo);
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    throw_error(ErrorCode::kIo, "jpeg: '" + path + "': " + err.message);
  }
  jpeg_stdio_dest(&cinfo, f.get());
  cinfo.image_width = static_cast<JDIMENSION>(img.width);
  cinfo.image_height = static_cast<JDIMENSION>(img.height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = bytes.data() + static_cast<std::size_t>(cinfo.next_scanline) * img.width * 3;
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
}

Image jpeg_roundtrip(const Image& img, int quality) {
  check_savable(img);
  if (quality < 1 || quality > 100) {
    throw_error(ErrorCode::kArgument, "jpeg quality must be in [1, 100], got " + std::to_string(quality));
  }
  std::vector<std::uint8_t> bytes = to_bytes(img);

  // Encode to memory.
  jpeg_compress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit_longjmp;
  err.pub.emit_message = jpeg_emit_message_quiet;
  jpeg_create_compress(&cinfo);
  unsigned char* encoded = nullptr;
  unsigned long encoded_size = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    if (encoded) free(encoded);
    throw_error(ErrorCode::kInternal, std::string("jpeg encode: ") + err.message);
  }
  jpeg_mem_dest(&cinfo, &encoded, &encoded_size);
  cinfo.image_width = static_cast<JDIMENSION>(img.width);
  cinfo.image_height = static_cast<JDIMENSION>(img.height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = bytes.data() + static_cast<std::size_t>(cinfo.next_scanline) * img.width * 3;
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);

  // Decode back.
  jpeg_decompress_struct dinfo;
  JpegErrorMgr derr;
  dinfo.err = jpeg_std_error(&derr.pub);
  derr.pub.error_exit = jpeg_error_exit_longjmp;
  derr.pub.emit_message = jpeg_emit_message_quiet;
  jpeg_create_decompress(&dinfo);
  if (setjmp(derr.jump)) {
    jpeg_destroy_decompress(&dinfo);
    free(encoded);
    throw_error(ErrorCode::kInternal, std::string("jpeg decode: ") + derr.message);
  }
  jpeg_mem_src(&dinfo, encoded, encoded_size);
  Image out;
  try {
    out = decode_jpeg(&dinfo, &derr);
  } catch (...) {
    jpeg_destroy_decompress(&dinfo);
    free(encoded);
    throw;
  }
  jpeg_destroy_decompress(&dinfo);
  free(encoded);

  if (!out.same_shape(img)) {
    throw_error(ErrorCode::kInternal, "jpeg round trip changed image shape");
  }
  return out;
}

std::string jpeg_codec_version() {
#ifdef LIBJPEG_TURBO_VERSION
#define IMDEG_STR2(x) #x
#define IMDEG_STR(x) IMDEG_STR2(x)
  return std::string("libjpeg-turbo ") + IMDEG_STR(LIBJPEG_TURBO_VERSION) +
         " (api " + std::to_string(JPEG_LIB_VERSION) + ")";
#undef IMDEG_STR
#undef IMDEG_STR2
#else
  return "libjpeg api " + std::to_string(JPEG_LIB_VERSION);
#endif
}

std::string png_codec_version() { return std::string("libpng ") + PNG_LIBPNG_VER_STRING; }

}  // namespace imdeg
