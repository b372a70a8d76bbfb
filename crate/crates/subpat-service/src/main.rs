use clap::Parser;
use std::net::SocketAddr;
use tokio::net::TcpListener;

/// Serve the subpat operations over HTTP/JSON.
#[derive(Parser)]
#[command(name = "subpat-service", version)]
struct Args {
    /// Address to listen on.
    #[arg(long, default_value = "127.0.0.1:8787")]
    addr: SocketAddr,
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let args = Args::parse();
    let listener = TcpListener::bind(args.addr).await?;
    eprintln!("subpat-service listening on {}", listener.local_addr()?);
    tokio::select! {
        r = subpat_service::serve(listener) => r,
        _ = tokio::signal::ctrl_c() => Ok(()),
    }
}
