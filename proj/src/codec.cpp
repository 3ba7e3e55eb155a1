#include <texpyr/codec.hpp>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <jerror.h>
#include <jpeglib.h>
#include <png.h>

namespace texpyr {

namespace {

bool looks_like_png(std::span<const std::uint8_t> bytes) {
    static const std::uint8_t sig[4] = {0x89, 0x50, 0x4E, 0x47};
    return bytes.size() >= 4 && std::memcmp(bytes.data(), sig, 4) == 0;
}

bool looks_like_jpeg(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

// ---- PNG ----

struct PngReadState {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
    auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (st->pos + count > st->size) {
        png_error(png, "read past end of stream");
    }
    std::memcpy(out, st->data + st->pos, count);
    st->pos += count;
}

void png_on_error(png_structp png, png_const_charp msg) {
    auto* err = static_cast<std::string*>(png_get_error_ptr(png));
    if (err) *err = msg;
    longjmp(png_jmpbuf(png), 1);
}

void png_on_warning(png_structp, png_const_charp) {}

RasterImage decode_png(std::span<const std::uint8_t> bytes) {
    std::string err_msg;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err_msg,
                                             png_on_error, png_on_warning);
    if (!png) throw DecodeError("png: failed to allocate reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DecodeError("png: failed to allocate info struct");
    }

    std::vector<png_bytep> row_ptrs;
    RasterImage img;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("png: " + (err_msg.empty() ? "corrupt stream" : err_msg));
    }

    PngReadState state{bytes.data(), bytes.size(), 0};
    png_set_read_fn(png, &state, png_read_from_memory);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (bit_depth == 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnsupportedFormat("png: 16-bit sample depth is not supported");
    }

    // Normalize everything to 8-bit RGB.
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    if (png_get_channels(png, info) != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("png: unexpected channel count after expansion");
    }

    img = RasterImage(static_cast<int>(w), static_cast<int>(h), 3);
    row_ptrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) {
        row_ptrs[y] = img.data.data() + static_cast<std::size_t>(y) * w * 3;
    }
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

// ---- JPEG ----

struct JpegErrorCtx {
    jpeg_error_mgr mgr;
    jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_on_error(j_common_ptr cinfo) {
    auto* ctx = reinterpret_cast<JpegErrorCtx*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, ctx->message);
    longjmp(ctx->jump, 1);
}

void jpeg_on_message(j_common_ptr, int) {}

RasterImage decode_jpeg(std::span<const std::uint8_t> bytes) {
    jpeg_decompress_struct cinfo;
    JpegErrorCtx err;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_on_error;
    err.mgr.emit_message = jpeg_on_message;
    err.message[0] = '\0';

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw DecodeError("jpeg: " + std::string(err.message));
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);

    if (cinfo.data_precision != 8) {
        jpeg_destroy_decompress(&cinfo);
        throw UnsupportedFormat("jpeg: only 8-bit sample precision is supported");
    }

    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    RasterImage img(static_cast<int>(cinfo.output_width),
                    static_cast<int>(cinfo.output_height), 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = img.data.data() +
                       static_cast<std::size_t>(cinfo.output_scanline) *
                           cinfo.output_width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

// ---- PNG encode ----

void png_write_to_vector(png_structp png, png_bytep data, png_size_t count) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + count);
}

void png_flush_noop(png_structp) {}

std::vector<std::uint8_t> encode_png_impl(const std::uint8_t* pixels, int width,
                                          int height, int channels) {
    if (width <= 0 || height <= 0) {
        throw InvalidArgument("encode_png: empty image");
    }
    std::string err_msg;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err_msg,
                                              png_on_error, png_on_warning);
    if (!png) throw DecodeError("png: failed to allocate writer");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw DecodeError("png: failed to allocate info struct");
    }

    std::vector<std::uint8_t> out;
    std::vector<png_bytep> row_ptrs(height);

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw DecodeError("png: " + (err_msg.empty() ? "encode failed" : err_msg));
    }

    png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
    png_set_IHDR(png, info, width, height, 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    for (int y = 0; y < height; ++y) {
        row_ptrs[y] = const_cast<png_bytep>(
            pixels + static_cast<std::size_t>(y) * width * channels);
    }
    png_set_rows(png, info, row_ptrs.data());
    png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

} // namespace

RasterImage decode_image(std::span<const std::uint8_t> bytes) {
    if (looks_like_png(bytes)) return decode_png(bytes);
    if (looks_like_jpeg(bytes)) return decode_jpeg(bytes);
    throw UnsupportedFormat("decode_image: stream is neither PNG nor JPEG");
}

RasterImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DecodeError("load_image: cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return decode_image(bytes);
    } catch (const UnsupportedFormat& e) {
        throw UnsupportedFormat(path.string() + ": " + e.what());
    } catch (const Error& e) {
        throw DecodeError(path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> encode_png(const RasterImage& img) {
    if (img.channels != 1 && img.channels != 3) {
        throw ChannelCountError("encode_png: expected 1 or 3 channels, got " +
                                std::to_string(img.channels));
    }
    return encode_png_impl(img.data.data(), img.width, img.height, img.channels);
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
    return encode_png_impl(img.data.data(), img.width, img.height, 1);
}

static void write_bytes(const std::filesystem::path& path,
                        const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DecodeError("save_png: cannot open " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DecodeError("save_png: short write to " + path.string());
}

void save_png(const std::filesystem::path& path, const RasterImage& img) {
    write_bytes(path, encode_png(img));
}

void save_png(const std::filesystem::path& path, const GrayImage& img) {
    write_bytes(path, encode_png(img));
}

} // namespace texpyr
