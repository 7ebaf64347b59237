#include "strmac/channel.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace strmac {

void write_deployment_csv(std::ostream& os, const Deployment& deployment)
{
  os << "id,kind,x,y,fd_capable,associated_ap\n";
  os << std::setprecision(17);
  for (const auto& n : deployment.nodes()) {
    os << n.id.value << ',' << (n.is_ap() ? "AP" : "STA") << ',' << n.pos.x << ',' << n.pos.y << ','
       << (n.is_fd() ? 1 : 0) << ',' << n.ap.value << '\n';
  }
}

Deployment read_deployment_csv(std::istream& is, double width_m, double height_m)
{
  std::string line;
  if (!std::getline(is, line) || line != "id,kind,x,y,fd_capable,associated_ap") {
    throw DeploymentIoError("deployment CSV: missing or unexpected header");
  }
  std::vector<NodeInfo> nodes;
  std::vector<std::pair<NodeId, std::uint32_t>> links;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::istringstream row(line);
    std::string id, kind, x, y, fd, ap;
    if (!std::getline(row, id, ',') || !std::getline(row, kind, ',') || !std::getline(row, x, ',') ||
        !std::getline(row, y, ',') || !std::getline(row, fd, ',') || !std::getline(row, ap)) {
      throw DeploymentIoError("deployment CSV line " + std::to_string(line_no) + ": expected 6 columns");
    }
    try {
      NodeInfo n;
      n.id = NodeId{static_cast<std::uint32_t>(std::stoul(id))};
      if (kind != "AP" && kind != "STA") {
        throw DeploymentIoError("unknown kind '" + kind + "'");
      }
      n.role = kind == "AP" ? Role::Ap : Role::Sta;
      n.pos = {std::stod(x), std::stod(y)};
      n.duplex = fd == "1" ? Duplex::Full : Duplex::Half;
      nodes.push_back(n);
      links.emplace_back(n.id, static_cast<std::uint32_t>(std::stoul(ap)));
    } catch (const std::logic_error& e) {
      throw DeploymentIoError("deployment CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  try {
    Deployment d(std::move(nodes), width_m, height_m);
    for (const auto& [sta, ap] : links) {
      if (!d.node(sta).is_ap()) {
        d.set_association(sta, NodeId{ap});
      }
    }
    return d;
  } catch (const std::exception& e) {
    throw DeploymentIoError(std::string("deployment CSV: ") + e.what());
  }
}

}  // namespace strmac
