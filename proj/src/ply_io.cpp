#include "rpcgc/ply_io.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>

#include "rpcgc/errors.h"

namespace rpcgc {

namespace {

enum class ScalarType {
  kInt8,
  kUint8,
  kInt16,
  kUint16,
  kInt32,
  kUint32,
  kFloat32,
  kFloat64,
};

size_t scalarSize(ScalarType t)
{
  switch (t) {
  case ScalarType::kInt8:
  case ScalarType::kUint8: return 1;
  case ScalarType::kInt16:
  case ScalarType::kUint16: return 2;
  case ScalarType::kInt32:
  case ScalarType::kUint32:
  case ScalarType::kFloat32: return 4;
  case ScalarType::kFloat64: return 8;
  }
  return 0;
}

bool isFloatType(ScalarType t)
{
  return t == ScalarType::kFloat32 || t == ScalarType::kFloat64;
}

std::optional<ScalarType> parseScalarType(const std::string& word)
{
  if (word == "char" || word == "int8") return ScalarType::kInt8;
  if (word == "uchar" || word == "uint8") return ScalarType::kUint8;
  if (word == "short" || word == "int16") return ScalarType::kInt16;
  if (word == "ushort" || word == "uint16") return ScalarType::kUint16;
  if (word == "int" || word == "int32") return ScalarType::kInt32;
  if (word == "uint" || word == "uint32") return ScalarType::kUint32;
  if (word == "float" || word == "float32") return ScalarType::kFloat32;
  if (word == "double" || word == "float64") return ScalarType::kFloat64;
  return std::nullopt;
}

struct Property {
  std::string name;
  ScalarType type = ScalarType::kFloat32;
  bool isList = false;
  ScalarType listCountType = ScalarType::kUint8;
};

struct Element {
  std::string name;
  size_t count = 0;
  std::vector<Property> properties;

  bool hasList() const
  {
    for (const auto& p : properties)
      if (p.isList)
        return true;
    return false;
  }

  size_t fixedRowSize() const
  {
    size_t n = 0;
    for (const auto& p : properties)
      n += scalarSize(p.type);
    return n;
  }
};

struct Header {
  PlyFormat format = PlyFormat::kAscii;
  std::vector<Element> elements;
  size_t bodyOffset = 0;  // first byte after end_header newline
  size_t lineCount = 0;   // header lines, for ASCII diagnostics
};

std::vector<std::string> splitWords(const std::string& line)
{
  std::vector<std::string> words;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
      i++;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t')
      i++;
    if (i > start)
      words.push_back(line.substr(start, i - start));
  }
  return words;
}

Header parseHeader(std::span<const uint8_t> bytes)
{
  Header hdr;
  size_t pos = 0;
  size_t lineNo = 0;
  bool sawPly = false;
  bool sawFormat = false;
  bool done = false;

  while (pos < bytes.size() && !done) {
    size_t eol = pos;
    while (eol < bytes.size() && bytes[eol] != '\n')
      eol++;
    if (eol == bytes.size())
      throw ParseError("ply header: missing end_header before end of file");
    std::string line(reinterpret_cast<const char*>(bytes.data() + pos), eol - pos);
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    pos = eol + 1;
    lineNo++;

    auto words = splitWords(line);
    if (lineNo == 1) {
      if (words.size() != 1 || words[0] != "ply")
        throw ParseError("ply header line 1: expected \"ply\"");
      sawPly = true;
      continue;
    }
    if (words.empty())
      continue;

    const std::string& key = words[0];
    if (key == "comment" || key == "obj_info")
      continue;
    if (key == "format") {
      if (words.size() != 3)
        throw ParseError("ply header line " + std::to_string(lineNo) + ": bad format line");
      if (words[1] == "ascii")
        hdr.format = PlyFormat::kAscii;
      else if (words[1] == "binary_little_endian")
        hdr.format = PlyFormat::kBinaryLittleEndian;
      else
        throw ParseError(
          "ply header line " + std::to_string(lineNo) + ": unsupported format \""
          + words[1] + "\"");
      sawFormat = true;
    } else if (key == "element") {
      if (words.size() != 3)
        throw ParseError("ply header line " + std::to_string(lineNo) + ": bad element line");
      Element el;
      el.name = words[1];
      size_t count = 0;
      auto res = std::from_chars(words[2].data(), words[2].data() + words[2].size(), count);
      if (res.ec != std::errc() || res.ptr != words[2].data() + words[2].size())
        throw ParseError(
          "ply header line " + std::to_string(lineNo) + ": bad element count \""
          + words[2] + "\"");
      el.count = count;
      hdr.elements.push_back(std::move(el));
    } else if (key == "property") {
      if (hdr.elements.empty())
        throw ParseError(
          "ply header line " + std::to_string(lineNo) + ": property before element");
      Property prop;
      if (words.size() == 5 && words[1] == "list") {
        auto countType = parseScalarType(words[2]);
        auto itemType = parseScalarType(words[3]);
        if (!countType || !itemType || isFloatType(*countType))
          throw ParseError(
            "ply header line " + std::to_string(lineNo) + ": bad list property");
        prop.isList = true;
        prop.listCountType = *countType;
        prop.type = *itemType;
        prop.name = words[4];
      } else if (words.size() == 3) {
        auto type = parseScalarType(words[1]);
        if (!type)
          throw ParseError(
            "ply header line " + std::to_string(lineNo) + ": unknown type \"" + words[1]
            + "\"");
        prop.type = *type;
        prop.name = words[2];
      } else {
        throw ParseError("ply header line " + std::to_string(lineNo) + ": bad property line");
      }
      hdr.elements.back().properties.push_back(std::move(prop));
    } else if (key == "end_header") {
      done = true;
    } else {
      throw ParseError(
        "ply header line " + std::to_string(lineNo) + ": unknown keyword \"" + key + "\"");
    }
  }

  if (!sawPly || !done)
    throw ParseError("ply header: missing end_header");
  if (!sawFormat)
    throw ParseError("ply header: missing format line");
  hdr.bodyOffset = pos;
  hdr.lineCount = lineNo;
  return hdr;
}

int64_t readIntScalar(const uint8_t* p, ScalarType t)
{
  switch (t) {
  case ScalarType::kInt8: return static_cast<int8_t>(p[0]);
  case ScalarType::kUint8: return p[0];
  case ScalarType::kInt16: {
    uint16_t v = static_cast<uint16_t>(p[0] | (p[1] << 8));
    return static_cast<int16_t>(v);
  }
  case ScalarType::kUint16: return p[0] | (p[1] << 8);
  case ScalarType::kInt32:
  case ScalarType::kUint32: {
    uint32_t v = 0;
    std::memcpy(&v, p, 4);
    return t == ScalarType::kInt32 ? static_cast<int32_t>(v) : static_cast<int64_t>(v);
  }
  case ScalarType::kFloat32:
  case ScalarType::kFloat64: break;
  }
  throw ParseError("ply: integer property has floating type");
}

double readFloatScalar(const uint8_t* p, ScalarType t)
{
  if (t == ScalarType::kFloat32) {
    uint32_t v = 0;
    std::memcpy(&v, p, 4);
    return std::bit_cast<float>(v);
  }
  if (t == ScalarType::kFloat64) {
    uint64_t v = 0;
    std::memcpy(&v, p, 8);
    return std::bit_cast<double>(v);
  }
  return static_cast<double>(readIntScalar(p, t));
}

struct VertexLayout {
  int xProp = -1;
  int yProp = -1;
  int zProp = -1;
  int labelProp = -1;
};

VertexLayout findVertexLayout(const Element& vertex)
{
  VertexLayout layout;
  for (size_t i = 0; i < vertex.properties.size(); i++) {
    const auto& p = vertex.properties[i];
    if (p.isList)
      continue;
    if (p.name == "x" && isFloatType(p.type))
      layout.xProp = static_cast<int>(i);
    else if (p.name == "y" && isFloatType(p.type))
      layout.yProp = static_cast<int>(i);
    else if (p.name == "z" && isFloatType(p.type))
      layout.zProp = static_cast<int>(i);
    else if (p.name == "label" && !isFloatType(p.type))
      layout.labelProp = static_cast<int>(i);
  }
  if (layout.xProp < 0 || layout.yProp < 0 || layout.zProp < 0)
    throw ParseError("ply: vertex element lacks float x/y/z properties");
  return layout;
}

void checkFinite(const Vec3d& p, size_t vertexIdx, const std::string& where)
{
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
    throw ParseError(
      "ply: non-finite coordinate in vertex " + std::to_string(vertexIdx + 1) + " ("
      + where + ")");
}

PointCloud readAsciiBody(
  std::span<const uint8_t> bytes, const Header& hdr, size_t vertexElement)
{
  // Walk the body line by line; each element row is one line.
  size_t pos = hdr.bodyOffset;
  size_t lineNo = hdr.lineCount;

  auto nextLine = [&](const char* what, size_t idx) {
    while (pos < bytes.size() && (bytes[pos] == '\n' || bytes[pos] == '\r'))
      pos++;
    if (pos >= bytes.size())
      throw ParseError(
        "ply: unexpected end of file at " + std::string(what) + " "
        + std::to_string(idx + 1));
    size_t eol = pos;
    while (eol < bytes.size() && bytes[eol] != '\n')
      eol++;
    std::string line(reinterpret_cast<const char*>(bytes.data() + pos), eol - pos);
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    pos = eol < bytes.size() ? eol + 1 : eol;
    lineNo++;
    return line;
  };

  PointCloud cloud;
  for (size_t e = 0; e < hdr.elements.size(); e++) {
    const Element& el = hdr.elements[e];
    if (e != vertexElement) {
      if (e > vertexElement)
        break;  // trailing elements are not needed
      for (size_t row = 0; row < el.count; row++)
        nextLine(el.name.c_str(), row);
      continue;
    }

    VertexLayout layout = findVertexLayout(el);
    cloud.positions.reserve(el.count);
    if (layout.labelProp >= 0)
      cloud.labels.reserve(el.count);

    for (size_t row = 0; row < el.count; row++) {
      std::string line = nextLine("vertex", row);
      auto words = splitWords(line);
      Vec3d p;
      int32_t label = 0;
      size_t w = 0;
      for (size_t i = 0; i < el.properties.size(); i++) {
        const Property& prop = el.properties[i];
        size_t take = 1;
        if (prop.isList) {
          if (w >= words.size())
            throw ParseError(
              "ply line " + std::to_string(lineNo) + ": vertex " + std::to_string(row + 1)
              + " has too few values");
          size_t listLen = 0;
          auto res = std::from_chars(
            words[w].data(), words[w].data() + words[w].size(), listLen);
          if (res.ec != std::errc())
            throw ParseError(
              "ply line " + std::to_string(lineNo) + ": bad list count \"" + words[w] + "\"");
          take = 1 + listLen;
        }
        if (w + take > words.size())
          throw ParseError(
            "ply line " + std::to_string(lineNo) + ": vertex " + std::to_string(row + 1)
            + " has too few values");

        auto parseDouble = [&](const std::string& word) {
          double v = 0.0;
          auto res = std::from_chars(word.data(), word.data() + word.size(), v);
          if (res.ec != std::errc() || res.ptr != word.data() + word.size())
            throw ParseError(
              "ply line " + std::to_string(lineNo) + ": bad number \"" + word + "\"");
          return v;
        };

        if (static_cast<int>(i) == layout.xProp)
          p.x = parseDouble(words[w]);
        else if (static_cast<int>(i) == layout.yProp)
          p.y = parseDouble(words[w]);
        else if (static_cast<int>(i) == layout.zProp)
          p.z = parseDouble(words[w]);
        else if (static_cast<int>(i) == layout.labelProp) {
          int64_t v = 0;
          auto res = std::from_chars(words[w].data(), words[w].data() + words[w].size(), v);
          if (res.ec != std::errc() || res.ptr != words[w].data() + words[w].size())
            throw ParseError(
              "ply line " + std::to_string(lineNo) + ": bad label \"" + words[w] + "\"");
          label = static_cast<int32_t>(v);
        }
        w += take;
      }
      checkFinite(p, row, "line " + std::to_string(lineNo));
      cloud.positions.push_back(p);
      if (layout.labelProp >= 0)
        cloud.labels.push_back(label);
    }
  }
  return cloud;
}

PointCloud readBinaryBody(
  std::span<const uint8_t> bytes, const Header& hdr, size_t vertexElement)
{
  size_t pos = hdr.bodyOffset;

  PointCloud cloud;
  for (size_t e = 0; e < hdr.elements.size(); e++) {
    const Element& el = hdr.elements[e];
    if (e != vertexElement) {
      if (e > vertexElement)
        break;
      if (el.hasList())
        throw ParseError(
          "ply: cannot skip binary element \"" + el.name + "\" with list properties");
      pos += el.fixedRowSize() * el.count;
      if (pos > bytes.size())
        throw ParseError(
          "ply: unexpected end of file inside element \"" + el.name + "\"");
      continue;
    }

    if (el.hasList())
      throw ParseError("ply: list properties on the vertex element are not supported");
    VertexLayout layout = findVertexLayout(el);
    const size_t rowSize = el.fixedRowSize();

    std::vector<size_t> offsets(el.properties.size());
    size_t off = 0;
    for (size_t i = 0; i < el.properties.size(); i++) {
      offsets[i] = off;
      off += scalarSize(el.properties[i].type);
    }

    cloud.positions.reserve(el.count);
    if (layout.labelProp >= 0)
      cloud.labels.reserve(el.count);

    for (size_t row = 0; row < el.count; row++) {
      if (pos + rowSize > bytes.size())
        throw ParseError(
          "ply: unexpected end of file at vertex " + std::to_string(row + 1)
          + " (byte offset " + std::to_string(pos) + ")");
      const uint8_t* base = bytes.data() + pos;
      Vec3d p{
        readFloatScalar(base + offsets[layout.xProp], el.properties[layout.xProp].type),
        readFloatScalar(base + offsets[layout.yProp], el.properties[layout.yProp].type),
        readFloatScalar(base + offsets[layout.zProp], el.properties[layout.zProp].type)};
      checkFinite(p, row, "byte offset " + std::to_string(pos));
      cloud.positions.push_back(p);
      if (layout.labelProp >= 0)
        cloud.labels.push_back(static_cast<int32_t>(readIntScalar(
          base + offsets[layout.labelProp], el.properties[layout.labelProp].type)));
      pos += rowSize;
    }
  }
  return cloud;
}

}  // namespace

PointCloud readPly(std::span<const uint8_t> bytes)
{
  Header hdr = parseHeader(bytes);

  size_t vertexElement = hdr.elements.size();
  for (size_t e = 0; e < hdr.elements.size(); e++) {
    if (hdr.elements[e].name == "vertex") {
      vertexElement = e;
      break;
    }
  }
  if (vertexElement == hdr.elements.size())
    throw ParseError("ply: no vertex element");

  if (hdr.format == PlyFormat::kAscii)
    return readAsciiBody(bytes, hdr, vertexElement);
  return readBinaryBody(bytes, hdr, vertexElement);
}

std::vector<uint8_t> writePly(const PointCloud& cloud, PlyFormat format)
{
  if (cloud.hasLabels() && cloud.labels.size() != cloud.size())
    throw std::invalid_argument("writePly: label count does not match point count");

  std::string header = "ply\n";
  header += format == PlyFormat::kAscii ? "format ascii 1.0\n"
                                        : "format binary_little_endian 1.0\n";
  header += "element vertex " + std::to_string(cloud.size()) + "\n";
  header += "property double x\nproperty double y\nproperty double z\n";
  if (cloud.hasLabels())
    header += "property int label\n";
  header += "end_header\n";

  std::vector<uint8_t> out(header.begin(), header.end());

  if (format == PlyFormat::kAscii) {
    char buf[96];
    for (size_t i = 0; i < cloud.size(); i++) {
      const Vec3d& p = cloud.positions[i];
      int n;
      if (cloud.hasLabels())
        n = std::snprintf(
          buf, sizeof buf, "%.17g %.17g %.17g %d\n", p.x, p.y, p.z, cloud.labels[i]);
      else
        n = std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
      out.insert(out.end(), buf, buf + n);
    }
  } else {
    auto putF64 = [&](double v) {
      uint64_t bits = std::bit_cast<uint64_t>(v);
      for (int b = 0; b < 8; b++)
        out.push_back(static_cast<uint8_t>(bits >> (8 * b)));
    };
    for (size_t i = 0; i < cloud.size(); i++) {
      const Vec3d& p = cloud.positions[i];
      putF64(p.x);
      putF64(p.y);
      putF64(p.z);
      if (cloud.hasLabels()) {
        auto v = static_cast<uint32_t>(cloud.labels[i]);
        for (int b = 0; b < 4; b++)
          out.push_back(static_cast<uint8_t>(v >> (8 * b)));
      }
    }
  }
  return out;
}

PointCloud loadPly(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open \"" + path + "\"");
  std::vector<uint8_t> bytes(
    (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return readPly(bytes);
}

void savePly(const PointCloud& cloud, const std::string& path, PlyFormat format)
{
  auto bytes = writePly(cloud, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ParseError("cannot open \"" + path + "\" for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  if (!out)
    throw ParseError("write failed for \"" + path + "\"");
}

}  // namespace rpcgc
