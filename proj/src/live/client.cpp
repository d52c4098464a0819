/*
 * Copyright 2026 The NeuroPod Simulator Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "neuropod/live/client.hpp"

#include <boost/asio.hpp>

#include "neuropod/error.hpp"

namespace neuropod::live {

namespace asio = boost::asio;
using tcp = asio::ip::tcp;

struct LineClient::Impl
{
    asio::io_context io;
    tcp::socket sock{io};
    std::string in;
    bool eof = false;
};

LineClient::LineClient(const std::string &host, std::uint16_t port) : impl_(std::make_unique<Impl>())
{
    try
    {
        tcp::resolver resolver(impl_->io);
        asio::connect(impl_->sock, resolver.resolve(host, std::to_string(port)));
        impl_->sock.set_option(tcp::no_delay(true));
    }
    catch (const boost::system::system_error &e)
    {
        throw IoError("cannot connect to " + host + ":" + std::to_string(port) + ": " + e.what());
    }
}

LineClient::~LineClient() = default;

void LineClient::send_line(const std::string &line)
{
    boost::system::error_code ec;
    asio::write(impl_->sock, asio::buffer(line + "\n"), ec);
    if (ec)
    {
        throw IoError("send failed: " + ec.message());
    }
}

std::optional<std::string> LineClient::next_line(std::chrono::milliseconds timeout)
{
    auto &d = *impl_;
    if (auto pos = d.in.find('\n'); pos != std::string::npos)
    {
        std::string line = d.in.substr(0, pos);
        d.in.erase(0, pos + 1);
        return line;
    }
    if (d.eof)
    {
        return std::nullopt;
    }
    std::optional<std::size_t> got;
    boost::system::error_code err;
    asio::async_read_until(d.sock, asio::dynamic_buffer(d.in), '\n',
            [&](boost::system::error_code ec, std::size_t n) {
                err = ec;
                if (!ec)
                {
                    got = n;
                }
            });
    d.io.restart();
    d.io.run_for(timeout);
    if (!d.io.stopped())
    {
        d.sock.cancel();
        d.io.restart();
        d.io.run();
    }
    if (!got)
    {
        if (err && err != asio::error::operation_aborted)
        {
            d.eof = true;
        }
        return std::nullopt;
    }
    std::string line = d.in.substr(0, *got - 1);
    d.in.erase(0, *got);
    return line;
}

std::optional<nlohmann::json> LineClient::next(std::chrono::milliseconds timeout)
{
    auto line = next_line(timeout);
    if (!line)
    {
        return std::nullopt;
    }
    return nlohmann::json::parse(*line);
}

void LineClient::close()
{
    boost::system::error_code ec;
    impl_->sock.shutdown(tcp::socket::shutdown_both, ec);
    impl_->sock.close(ec);
    impl_->eof = true;
}

} // namespace neuropod::live
